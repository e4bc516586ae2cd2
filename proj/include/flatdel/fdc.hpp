#pragma once

#include "flatdel/delaunay.hpp"
#include "flatdel/manifold.hpp"

#include <map>
#include <optional>
#include <vector>

namespace flatdel {

// Del(pi_T(P cap B(m, rho))) restricted to simplices whose hull holds m, indexed by source point.
StarResult star_at(const Vec& m, const PointCloud& cloud, double rho, const ManifoldModel& model,
                   const Tolerance& tol = {});

struct Prestar {
  Vec anchor;
  Vec projected;  // x* = pi_M(x)
  double rho = 0.0;
  std::vector<Index> neighborhood;  // P cap B(x*, rho)
  SimplexSet simplices;
  std::vector<Simplex> boundary_hits;
  DegeneracyReport degeneracy;
};

// Throws ProjectionUndefined when d(x, M) >= reach and InjectivityViolation when two points of
// the neighborhood share a tangent projection.
Prestar prestar_at(const Vec& x, const PointCloud& cloud, double rho, const ManifoldModel& model,
                   const Tolerance& tol = {});

// sigma subset of B(h, rho) and pi_H(sigma) is a Delaunay d-simplex of pi_H(P cap B(h, rho)).
// H must have dimension |sigma| - 1.
bool delaunay_membership(const PointCloud& cloud, const Simplex& sigma, double rho, const Vec& h,
                         const AffineFlat& flat, const Tolerance& tol = {});

// sigma in Prestar(x, rho) for a d-simplex sigma, via the tangent-space characterization plus the
// hull condition x* in Conv pi_T(sigma).
bool in_prestar(const PointCloud& cloud, const Simplex& sigma, double rho, const ManifoldModel& model,
                const Vec& x, const Tolerance& tol = {});

struct SimplexMeta {
  double circumradius = kInf;  // R(sigma); +inf when degenerate
  double seb_radius = 0.0;     // r_sigma
  double height = kInf;
  bool delloc = false;         // only evaluated for d-simplices
  bool gabriel = false;
  std::vector<Index> provenance;  // points whose prestar produced the simplex
};

struct FlatDelComplex {
  PointCloud points;
  double rho = 0.0;
  std::size_t d = 0;
  ModelPtr model;  // null for the manifold-free route
  SimplexSet simplices;
  std::map<Simplex, SimplexMeta> meta;
  bool closed = false;  // closed under faces
  DegeneracyReport degeneracy;
  std::vector<Simplex> boundary_hits;
};

FlatDelComplex flat_delaunay(const PointCloud& cloud, double rho, ModelPtr model, const Tolerance& tol = {});

// sigma is Delaunay in pi_{Aff sigma}(P cap B(c_sigma, rho)).
bool is_delloc(const PointCloud& cloud, const Simplex& sigma, double rho, const Tolerance& tol = {});
SimplexSet enumerate_delloc(const PointCloud& cloud, double rho, std::size_t d, const Tolerance& tol = {});
// Closure of the delloc d-simplices, with metadata.
FlatDelComplex flat_delaunay_manifold_free(const PointCloud& cloud, double rho, std::size_t d,
                                           const Tolerance& tol = {});

// Barycentric grid of Conv sigma with resolution 1/k (vertices included).
std::vector<Vec> barycentric_grid(const std::vector<Vec>& sigma, std::size_t k);

struct Agreement {
  bool agree = true;
  std::vector<Vec> anchors;      // grid points, then c_sigma
  std::vector<bool> membership;  // sigma in Prestar(anchor, rho)
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // first disagreeing anchor pair
};
Agreement prestars_in_agreement(const PointCloud& cloud, const Simplex& sigma, double rho,
                                const ManifoldModel& model, std::size_t grid_k = 4, const Tolerance& tol = {});

// m in pi_M(Conv sigma): the point of Conv sigma over m is located through its barycentric
// coordinates in T_m M, then confirmed by projecting it back onto M.
bool in_projected_hull(const ManifoldModel& model, const std::vector<Vec>& sigma, const Vec& m,
                       const Tolerance& tol = {});
// Grid proxy: some projected barycentric grid point lies within diam/(4k) of m.
bool in_projected_hull_grid(const ManifoldModel& model, const std::vector<Vec>& sigma, const Vec& m,
                            std::size_t grid_k = 4);

// {sigma in K | m in pi_M(Conv sigma)}.
SimplexSet covering_simplices(const FlatDelComplex& k, const Vec& m, const Tolerance& tol = {});

}  // namespace flatdel

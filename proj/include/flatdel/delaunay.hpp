#pragma once

#include "flatdel/geom.hpp"
#include "flatdel/types.hpp"

#include <optional>
#include <set>
#include <vector>

namespace flatdel {

// Points expressed in the basis of a d-flat, tagged with their index in the source cloud.
// Source indices are kept sorted.
struct FlatPointSet {
  AffineFlat flat;
  std::vector<Index> source;
  std::vector<std::vector<double>> cols;  // d coordinate columns

  std::size_t size() const { return source.size(); }
  std::size_t dim() const { return cols.size(); }
  Vec coords(std::size_t local) const;
  std::optional<std::size_t> local_index(Index src) const;
  std::vector<const double*> columns() const;
  double scale() const;  // bounding-box diagonal, at least tiny positive
};

FlatPointSet make_flat_point_set(const PointCloud& cloud, std::vector<Index> indices, const AffineFlat& flat);
// Direct construction from flat coordinates (tests, oracles).
FlatPointSet make_flat_point_set(const AffineFlat& flat, const std::vector<Vec>& coords,
                                 std::vector<Index> source = {});

struct DegeneracyReport {
  std::set<std::vector<Index>> cospherical;  // groups of >= d+2 source indices on one empty sphere
  bool empty() const { return cospherical.empty(); }
};

struct DelaunayComplex {
  SimplexSet simplices;  // over source indices, closed under faces
  DegeneracyReport degeneracy;
  bool used_direct_test = false;  // true when the points do not span the flat
};

DelaunayComplex delaunay_complex(const FlatPointSet& fps, const Tolerance& tol = {});

struct StarResult {
  SimplexSet simplices;
  std::vector<Simplex> boundary_hits;  // members whose hull holds m only on its relative boundary
  DegeneracyReport degeneracy;
};

// Delaunay simplices whose closed hull contains m (an ambient point lying in the flat).
StarResult star_in_flat(const FlatPointSet& fps, const DelaunayComplex& del, const Vec& m,
                        const Tolerance& tol = {});
StarResult star_in_flat(const FlatPointSet& fps, const Vec& m, const Tolerance& tol = {});

// min over candidates outside sigma of | ||q - Z|| - R | in flat coordinates; +inf if none.
double protection_of(const FlatPointSet& fps, const Simplex& sigma, const std::vector<Index>& candidates,
                     const Tolerance& tol = {});

// Delaunay membership of one d-simplex of the flat point set (unique circumsphere in the flat).
// Returns false for a degenerate simplex and sets *degenerate.
bool is_delaunay_in_flat(const FlatPointSet& fps, const Simplex& sigma, const Tolerance& tol = {},
                         bool* degenerate = nullptr);

// Smallest circumsphere of sigma in the ambient space is empty of the other cloud points.
bool is_gabriel(const PointCloud& cloud, const Simplex& sigma, const Tolerance& tol = {});

// Is there any sphere through sigma with no other point strictly inside? Linear program over
// centers; the margin is the largest slack min_q (||c-q||^2 - ||c-v0||^2) in units of scale^2.
struct EmptySphere {
  bool admits = false;
  double margin = 0.0;
  Vec center;
};
EmptySphere empty_sphere(const std::vector<Vec>& sigma, const std::vector<Vec>& others,
                         const Tolerance& tol = {});
// Full ambient Delaunay membership, others taken from the whole cloud (cutting planes).
EmptySphere empty_sphere(const PointCloud& cloud, const Simplex& sigma, const Tolerance& tol = {});

}  // namespace flatdel

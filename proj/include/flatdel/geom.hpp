#pragma once

#include "flatdel/types.hpp"

#include <vector>

namespace flatdel {

// base + span(basis columns); the basis is orthonormal (N x d).
struct AffineFlat {
  Vec base;
  Mat basis;

  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
  std::size_t ambient_dim() const { return static_cast<std::size_t>(base.size()); }

  Vec project(const Vec& x) const;
  Vec coords(const Vec& x) const;  // coordinates of the projection in the basis
  Vec lift(const Vec& c) const;
  double distance(const Vec& x) const;

  // Orthonormalizes the given direction columns; near-dependent columns are dropped.
  static AffineFlat from_directions(const Vec& base, const Mat& directions, double drop_tol = 1e-12);
  // Affine hull of a finite point set (rank revealed with a scale-relative threshold).
  static AffineFlat through(const std::vector<Vec>& points, const Tolerance& tol = {});
};

struct Ball {
  Vec center;
  double radius = 0.0;
};

struct Sphere {
  Vec center;
  double radius = 0.0;
};

Vec project_to_flat(const AffineFlat& h, const Vec& x);

// Largest principal angle, sup over the smaller flat of the angle to the larger one.
double angle_between_flats(const AffineFlat& h0, const AffineFlat& h1);
double angle_line_to_flat(const Vec& a, const Vec& b, const AffineFlat& h, const Tolerance& tol = {});

double diameter(const std::vector<Vec>& points);

double height(const std::vector<Vec>& points, const Tolerance& tol = {});
double height(const PointCloud& cloud, const Simplex& s, const Tolerance& tol = {});
bool is_degenerate(const std::vector<Vec>& points, const Tolerance& tol = {});

Sphere min_circumsphere(const std::vector<Vec>& points, const Tolerance& tol = {});
Sphere min_circumsphere(const PointCloud& cloud, const Simplex& s, const Tolerance& tol = {});

Ball smallest_enclosing_ball(const std::vector<Vec>& points, const Tolerance& tol = {});
Ball smallest_enclosing_ball(const PointCloud& cloud, const Simplex& s, const Tolerance& tol = {});
bool is_rho_small(const PointCloud& cloud, const Simplex& s, double rho, const Tolerance& tol = {});

// Least-squares barycentric coordinates of x with respect to an affinely independent set;
// residual is the distance from x to the affine hull.
struct Barycentric {
  Vec lambda;
  double residual = 0.0;
};
Barycentric barycentric(const std::vector<Vec>& simplex, const Vec& x);

// Closest point of Conv(points) to x (small sets; exhaustive over faces).
Vec closest_point_in_hull(const std::vector<Vec>& points, const Vec& x);

// Analytic angle bounds.
double bound_federer(double dist_pq, double reach);
double bound_tangent_variation(double dist_pq, double reach);
struct CappedAngle {
  double angle = 0.0;
  bool capped = false;
};
CappedAngle bound_whitney(double t, int dim_sigma, double height_sigma);
double bound_general_angle(int dim_sigma, double height_sigma, double rho, double delta, double reach);
double bound_theta_sigma(int dim_sigma, double height_sigma, double rho, double delta, double reach);
double bound_seb_preimage(double seb_radius_projected, double angle);
double bound_height_under_projection(double height_sigma, double angle);

}  // namespace flatdel

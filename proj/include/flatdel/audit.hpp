#pragma once

#include "flatdel/fdc.hpp"
#include "flatdel/manifold.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flatdel {

// Minimum pairwise distance; +inf for fewer than two points.
double separation(const PointCloud& cloud);

// min height over rho-small d-simplices; +inf when there are none.
double height_at_scale(const PointCloud& cloud, double rho, std::size_t d, const Tolerance& tol = {});

struct ThetaResult {
  double sampled = 0.0;  // grid estimate, may under-estimate
  double bound = 0.0;    // certified over-estimate (pi/2 where the analytic bound does not apply)
  bool bound_out_of_regime = false;
  std::size_t simplices = 0;
};
// Theta(sigma) sampled over tangent spaces at projected barycentric grid points plus Aff sigma.
double theta_sampled(const PointCloud& cloud, const Simplex& sigma, const ManifoldModel& model,
                     std::size_t grid_k = 2, const Tolerance& tol = {});
ThetaResult theta_at_scale(const PointCloud& cloud, double rho, std::size_t d, const ManifoldModel& model,
                           std::size_t grid_k = 2, const Tolerance& tol = {});

// min over rho-small d-simplices of the two-sided distance from projected neighbors in
// B(c_sigma, rho) to S(sigma); +inf when every candidate set is empty.
double protection_at_scale(const PointCloud& cloud, double rho, std::size_t d, const Tolerance& tol = {});

struct QualityReport {
  double rho = 0.0;
  std::size_t d = 0;
  double epsilon_estimate = 0.0;  // max witness distance to P
  double epsilon_bound = 0.0;     // plus witness spacing
  double delta_estimate = 0.0;
  std::size_t witness_count = 0;
  double separation = 0.0;
  double height = kInf;
  ThetaResult theta;
  double protection = kInf;
  double protection_3rho = kInf;
  std::size_t rho_small_simplices = 0;
  std::size_t degenerate_groups = 0;
  std::vector<std::string> notes;
};

struct AuditOptions {
  std::size_t grid_k = 4;          // prestar agreement grid
  std::size_t theta_grid_k = 2;    // Theta sampling grid
  double witness_spacing = 0.0;    // 0: epsilon/20 (sampling audit) or rho/4 (structural audit)
  bool theta_from_samples = false; // judge the angle condition on the sampled Theta (not sound)
  bool compute_protection_3rho = true;
};

QualityReport quality_report(const PointCloud& cloud, double rho, const ManifoldModel& model,
                             const AuditOptions& opt = {}, const Tolerance& tol = {});

// One hypothesis: value compared with threshold. margin > 0 means passing by that much.
struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  double margin = 0.0;
  bool vacuous = false;
  std::string witness;
  std::string note;
};

struct TheoremVerdict {
  std::string theorem;
  std::vector<Check> checks;
  std::map<std::string, double> params;
  std::vector<std::string> notes;
  bool pass() const;
  const Check* find(const std::string& name) const;
};

// Structural conditions (1)-(5) plus the preconditions rho < R/2 and P in the rho-offset of M.
TheoremVerdict audit_structural(const PointCloud& cloud, double rho, const ManifoldModel& model,
                                const AuditOptions& opt = {}, const Tolerance& tol = {});

// A = 4 delta theta + 4 rho theta^2, recomputed on every call.
double distortion_budget(double delta, double rho, double theta);

TheoremVerdict audit_sampling_safety(const PointCloud& cloud, double rho, double epsilon, double delta, double theta,
                                     const ManifoldModel& model, const AuditOptions& opt = {},
                                     const Tolerance& tol = {});

// Anchor pairs (h, H) for Delaunay stability.
struct Anchor {
  Vec h;
  AffineFlat flat;
};
// (c_sigma, Aff sigma) followed by (x*, T_{x*} M) for x on the barycentric grid of Conv sigma.
std::vector<Anchor> standard_neighborhood(const PointCloud& cloud, const Simplex& sigma, const ManifoldModel& model,
                                          std::size_t grid_k = 4, const Tolerance& tol = {});

struct Stability {
  bool stable = true;
  std::vector<bool> membership;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};
Stability delaunay_stable(const PointCloud& cloud, const Simplex& sigma, double rho, const std::vector<Anchor>& anchors,
                          const Tolerance& tol = {});

}  // namespace flatdel

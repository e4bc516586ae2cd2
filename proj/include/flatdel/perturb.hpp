#pragma once

#include "flatdel/geom.hpp"
#include "flatdel/rng.hpp"
#include "flatdel/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatdel {

struct PcaTangent {
  Index point = 0;
  AffineFlat flat;       // V_p through p
  Vec spectrum;          // inertia eigenvalues, descending
  double gap = 0.0;      // lambda_d - lambda_{d+1}
  bool ill_conditioned = false;
};

// Top-d eigenvectors of the centered inertia tensor of P cap B(p, radius).
PcaTangent pca_tangent(const PointCloud& cloud, Index p, double radius, std::size_t d, double gap_tol = 1e-6);

// Uniform point of V_p cap B(p, r_pert).
Vec reset_point(const Vec& p, const AffineFlat& vp, double r_pert, Rng& rng);

struct PerturbParams {
  double rho = 0.0;
  double r_pert = 0.0;
  double height_min = 0.0;
  double protection_min = 0.0;
  std::uint64_t seed = 1;
  std::size_t max_rounds = 10000;
  bool recompute_tangents = false;  // experimental: refresh V_p from P' after each round
};

struct TunedParams {
  PerturbParams params;
  double epsilon = 0.0, eta = 0.0, reach = 0.0, c_ste = 32.0;
  double delta = 0.0;          // rho^2 / R
  double epsilon_prime = 0.0;  // 21 eps / 20
  double delta_prime = 0.0;    // 2 delta
  std::vector<std::string> warnings;
};

// rho = C_ste eps, delta = rho^2/R, r_pert = eta eps / 20, thresholds c (rho/R)^(1/2) rho.
TunedParams default_params(double epsilon, double eta, double reach, std::size_t d, double c_ste = 32.0,
                           double c2 = 0.05, double c3 = 0.05);

struct BadEvent {
  enum class Kind { height, protection };
  Kind kind = Kind::height;
  Simplex sigma;
  std::optional<Index> point;       // p' for protection events
  std::vector<Index> correlated;    // d+1 or d+2 indices, ascending
  double value = 0.0;
  double threshold = 0.0;
};

// First violation in lexicographic order of sigma' (height before protection, then p' ascending).
std::optional<BadEvent> find_bad_event(const PointCloud& cloud, const PerturbParams& params, std::size_t d,
                                       const Tolerance& tol = {});

struct PerturbTrace {
  std::size_t rounds = 0;
  std::size_t height_events = 0;
  std::size_t protection_events = 0;
  std::size_t resets = 0;
  std::vector<BadEvent> events;  // first 1000 handled events
  std::vector<std::string> warnings;
};

class RoundBudgetExhausted : public Error {
 public:
  RoundBudgetExhausted(const std::string& what, PerturbTrace t) : Error(what), trace(std::move(t)) {}
  PerturbTrace trace;
};

struct PerturbResult {
  PointCloud cloud;
  PerturbTrace trace;
};

PerturbResult moser_tardos(const PointCloud& cloud, const PerturbParams& params, std::size_t d,
                           const Tolerance& tol = {});

}  // namespace flatdel

#pragma once

#include "flatdel/fdc.hpp"
#include "flatdel/manifold.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flatdel {

struct ClosureReport {
  bool pass = true;
  std::optional<Simplex> simplex;  // present simplex ...
  std::optional<Simplex> missing;  // ... and its absent face
};
ClosureReport check_complex_closure(const SimplexSet& k);

struct EmbeddingReport {
  bool pass = true;
  std::optional<Simplex> degenerate;  // dim sigma != dim Aff sigma
  std::optional<std::pair<Simplex, Simplex>> pair;
  std::optional<Vec> point;  // common point of both hulls outside Conv(alpha cap beta)
  double distance = 0.0;     // its distance to Conv(alpha cap beta)
  double tolerance = 0.0;
  std::size_t pairs_tested = 0;
};
// Non-degeneracy of every simplex, then Conv a cap Conv b in Conv(a cap b) for every pair of
// maximal simplices with overlapping bounding balls.
EmbeddingReport check_embedding(const PointCloud& cloud, const SimplexSet& k, const Tolerance& tol = {});
// One pair: the farthest common point found by the linear program, or nullopt if the hulls only
// meet inside Conv(a cap b) (up to tolerance).
std::optional<Vec> embedding_violation(const PointCloud& cloud, const Simplex& a, const Simplex& b, double tolerance,
                                       double* distance = nullptr);

struct ClosenessReport {
  bool pass = true;
  double r = 0.0;
  double max_distance = 0.0;
  std::optional<Simplex> simplex;
  std::optional<Vec> point;
  std::size_t samples = 0;
};
// Throws OutOfRegime when r >= reach.
ClosenessReport check_closeness(const PointCloud& cloud, const SimplexSet& k, const ManifoldModel& model, double r,
                                std::size_t grid_k = 4);

struct ManifoldReport {
  bool pass = true;
  bool supported = true;  // d <= 2 only
  long euler = 0;
  std::vector<std::size_t> f_vector;
  std::size_t components = 0;
  std::string diagnosis;
  std::optional<Simplex> witness;  // vertex or edge with a bad link
};
ManifoldReport check_closed_manifold(const SimplexSet& k, std::size_t d);
long euler_characteristic(const SimplexSet& k);
std::size_t connected_components(const SimplexSet& k);

struct HomeoOptions {
  std::size_t grid_k = 4;
  double witness_spacing = 0.0;  // 0: tol_surj
  double tol_inj = 0.0;          // 0: min edge length / (2 k)
  double tol_surj = 0.0;         // 0: 1.5 max simplex diameter / k
  std::size_t prestar_samples = 50;
  std::uint64_t seed = 7;
};

struct HomeoReport {
  bool injective = true;
  bool surjective = true;
  bool prestar_formula = true;
  bool prestar_checked = false;
  double tol_inj = 0.0;
  double tol_surj = 0.0;
  std::optional<std::pair<Simplex, Simplex>> injectivity_pair;
  std::optional<Vec> injectivity_point;
  std::optional<Vec> surjectivity_witness;
  double max_surjectivity_gap = 0.0;
  std::optional<Vec> prestar_witness;
  std::size_t samples = 0;
  std::size_t witnesses = 0;
  bool pass() const { return injective && surjective && prestar_formula; }
};
// The prestar-formula part needs k.model and k.rho; it is skipped otherwise.
HomeoReport check_homeomorphism_proxy(const FlatDelComplex& k, const ManifoldModel& model,
                                      const HomeoOptions& opt = {}, const Tolerance& tol = {});

// Prestar(m, rho) == {sigma in K | m in pi_M(Conv sigma)} at one point; reports both sets.
struct PrestarFormula {
  bool equal = true;
  SimplexSet prestar;
  SimplexSet covering;
};
PrestarFormula prestar_formula_at(const FlatDelComplex& k, const Vec& m, const Tolerance& tol = {});

struct CircumradiusReport {
  bool pass = true;
  bool vacuous = false;
  double max_radius = 0.0;
  double epsilon = 0.0;
  std::optional<Simplex> witness;
};
CircumradiusReport check_circumradii(const PointCloud& cloud, const SimplexSet& k, std::size_t d, double epsilon,
                                     double slack = 0.0, const Tolerance& tol = {});

struct DellocReport {
  bool pass = true;
  std::vector<Simplex> only_in_complex;
  std::vector<Simplex> only_delloc;
};
DellocReport check_delloc_equivalence(const SimplexSet& k, const PointCloud& cloud, double rho, std::size_t d,
                                      const Tolerance& tol = {});

struct GabrielReport {
  bool pass = true;
  std::vector<Simplex> not_gabriel;
  std::vector<Simplex> not_delaunay;  // outside the full Delaunay complex of P
  std::size_t tested = 0;
};
GabrielReport check_gabriel(const PointCloud& cloud, const SimplexSet& k, std::size_t d, const Tolerance& tol = {});

struct StarConsistencyReport {
  bool pass = true;
  std::optional<Simplex> simplex;
  std::optional<Index> vertex;  // sigma is not a face of any simplex of Prestar(vertex)
};
StarConsistencyReport check_star_consistency(const FlatDelComplex& k, const Tolerance& tol = {});

// Named, filterable battery.
struct VerifyOptions {
  std::set<std::string> checks;           // empty: all applicable
  std::optional<double> epsilon;          // circumradius bound; skipped if unset
  double closeness_r = 0.0;               // 0: R/2 (or rho for flat models)
  double circumradius_slack = 1e-9;
  std::size_t grid_k = 4;
  HomeoOptions homeo;
};

struct CheckOutcome {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string summary;  // witness or key value
  double seconds = 0.0;
};

struct VerificationReport {
  std::vector<CheckOutcome> outcomes;
  std::optional<ClosureReport> closure;
  std::optional<EmbeddingReport> embedding;
  std::optional<ClosenessReport> closeness;
  std::optional<ManifoldReport> manifold;
  std::optional<HomeoReport> homeomorphism;
  std::optional<CircumradiusReport> circumradii;
  std::optional<DellocReport> delloc;
  std::optional<GabrielReport> gabriel;
  std::optional<StarConsistencyReport> star_consistency;
  double seconds = 0.0;
  bool pass() const;
};

const std::vector<std::string>& verification_check_names();
VerificationReport verify_complex(const FlatDelComplex& k, const VerifyOptions& opt = {}, const Tolerance& tol = {});

}  // namespace flatdel

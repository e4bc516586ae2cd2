#pragma once

#include "flatdel/audit.hpp"
#include "flatdel/fdc.hpp"
#include "flatdel/manifold.hpp"
#include "flatdel/perturb.hpp"
#include "flatdel/report_json.hpp"
#include "flatdel/verify.hpp"

#include <map>
#include <optional>
#include <string>

namespace flatdel {

struct ManifoldSpec {
  std::string name;  // circle, sphere, torus, flat_torus, plane
  double radius = 1.0;
  double major = 1.0;
  double minor = 0.35;
  std::size_t d = 0;        // 0: the model default
  std::size_t ambient = 0;  // 0: the model default
  double lo = 0.0, hi = 1.0;
};

struct SampleConfig {
  std::string method = "lattice";  // lattice | geodesic | dense
  std::size_t count = 0;           // lattice size
  double epsilon = 0.0;            // 0 with a lattice: estimated from witnesses
  double delta = 0.0;
  double eta = 1.0;
  std::uint64_t seed = 1;
  double net_epsilon = 0.0;        // > 0: keep a farthest-point net of the sample
};

struct PerturbConfig {
  bool enabled = false;
  double c2 = 0.05;
  double c3 = 0.05;
  std::size_t max_rounds = 10000;
  bool tuned = false;  // parameters from default_params (needs C_ste >= 32)
};

struct AuditConfig {
  bool enabled = true;
  bool sampling = false;  // also audit sampling/safety conditions
  double theta = 0.0;     // 0: the certified Theta bound
  AuditOptions options;
};

struct VerifyConfig {
  bool enabled = true;
  std::set<std::string> checks;
};

struct PipelineConfig {
  ManifoldSpec manifold;
  SampleConfig sample;
  std::optional<double> rho;  // unset: auto = c_ste * epsilon
  double c_ste = 32.0;
  PerturbConfig perturb;
  AuditConfig audit;
  VerifyConfig verify;
  bool manifold_free = false;
  std::string out_dir = "flatdel_out";
};

// Throws Error on a malformed or incomplete config.
PipelineConfig config_from_json(const report::Json& j);
// Every field with defaults filled in.
report::Json config_to_json(const PipelineConfig& c);

ModelPtr make_model(const ManifoldSpec& spec);

struct SampleOutput {
  PointCloud cloud;
  double epsilon = 0.0;  // certified (dense) or estimated (lattice) density
  std::vector<std::string> warnings;
  report::Json provenance;
};
SampleOutput run_sample(const PipelineConfig& c, const ManifoldModel& model);

double resolve_rho(const PipelineConfig& c, double epsilon);

struct PerturbOutput {
  PointCloud cloud;
  PerturbParams params;
  PerturbTrace trace;
  report::Json report;
};
PerturbOutput run_perturb(const PipelineConfig& c, const PointCloud& cloud, const ManifoldModel& model,
                          double epsilon);

FlatDelComplex run_reconstruct(const PipelineConfig& c, const PointCloud& cloud, ModelPtr model, double rho);

struct AuditOutput {
  QualityReport quality;
  TheoremVerdict structural;
  std::optional<TheoremVerdict> sampling;
  bool pass() const { return structural.pass() && (!sampling || sampling->pass()); }
  report::Json to_json() const;
};
AuditOutput run_audit(const PipelineConfig& c, const PointCloud& cloud, const ManifoldModel& model, double rho,
                      double epsilon);

VerificationReport run_verify(const PipelineConfig& c, const FlatDelComplex& k, double epsilon);

struct PipelineResult {
  SampleOutput sample;
  std::optional<PerturbOutput> perturb;
  double rho = 0.0;
  FlatDelComplex complex;
  std::optional<AuditOutput> audit;
  std::optional<VerificationReport> verification;
  std::map<std::string, double> seconds;  // per stage wall time
};
PipelineResult run_pipeline(const PipelineConfig& c);

}  // namespace flatdel

#include "flatdel/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace flatdel {

using report::Json;
using report::number;

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    if constexpr (std::is_same_v<T, double>)
      return report::to_double(j.at(key));
    else
      return j.at(key).get<T>();
  } catch (const std::exception& e) {
    throw Error(std::string("config field '") + key + "': " + e.what());
  }
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* n : known) ok = ok || k == n;
    if (!ok) throw Error("unknown config field '" + where + k + "'");
  }
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PipelineConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  reject_unknown(j, {"manifold", "sample", "rho", "c_ste", "perturb", "audit", "verify", "manifold_free", "out_dir"}, "");
  PipelineConfig c;
  if (!j.contains("manifold")) throw Error("config needs a manifold");
  const Json& m = j.at("manifold");
  if (m.is_string()) {
    c.manifold.name = m.get<std::string>();
  } else {
    reject_unknown(m, {"name", "radius", "major", "minor", "d", "ambient", "lo", "hi"}, "manifold.");
    if (!m.contains("name")) throw Error("config needs manifold.name");
    c.manifold.name = m.at("name").get<std::string>();
    c.manifold.radius = get_or(m, "radius", c.manifold.radius);
    c.manifold.major = get_or(m, "major", c.manifold.major);
    c.manifold.minor = get_or(m, "minor", c.manifold.minor);
    c.manifold.d = get_or<std::size_t>(m, "d", 0);
    c.manifold.ambient = get_or<std::size_t>(m, "ambient", 0);
    c.manifold.lo = get_or(m, "lo", c.manifold.lo);
    c.manifold.hi = get_or(m, "hi", c.manifold.hi);
  }
  if (j.contains("sample")) {
    const Json& s = j.at("sample");
    reject_unknown(s, {"method", "count", "epsilon", "delta", "eta", "seed", "net_epsilon"}, "sample.");
    c.sample.method = get_or<std::string>(s, "method", c.sample.method);
    c.sample.count = get_or<std::size_t>(s, "count", 0);
    c.sample.epsilon = get_or(s, "epsilon", 0.0);
    c.sample.delta = get_or(s, "delta", 0.0);
    c.sample.eta = get_or(s, "eta", c.sample.eta);
    c.sample.seed = get_or<std::uint64_t>(s, "seed", 1);
    c.sample.net_epsilon = get_or(s, "net_epsilon", 0.0);
  }
  if (c.sample.method != "lattice" && c.sample.method != "dense" && c.sample.method != "geodesic")
    throw Error("sample.method must be lattice, geodesic or dense");
  if (c.sample.method != "dense" && c.sample.count == 0) throw Error(c.sample.method + " sampling needs sample.count");
  if (c.sample.method == "dense" && !(c.sample.epsilon > 0.0)) throw Error("dense sampling needs sample.epsilon > 0");
  if (j.contains("rho") && !j.at("rho").is_null()) {
    if (j.at("rho").is_string() && j.at("rho").get<std::string>() == "auto")
      c.rho.reset();
    else
      c.rho = report::to_double(j.at("rho"));
  }
  c.c_ste = get_or(j, "c_ste", c.c_ste);
  if (j.contains("perturb")) {
    const Json& p = j.at("perturb");
    reject_unknown(p, {"enabled", "c2", "c3", "max_rounds", "tuned"}, "perturb.");
    c.perturb.enabled = get_or(p, "enabled", true);
    c.perturb.c2 = get_or(p, "c2", c.perturb.c2);
    c.perturb.c3 = get_or(p, "c3", c.perturb.c3);
    c.perturb.max_rounds = get_or<std::size_t>(p, "max_rounds", c.perturb.max_rounds);
    c.perturb.tuned = get_or(p, "tuned", false);
  }
  if (j.contains("audit")) {
    const Json& a = j.at("audit");
    reject_unknown(a, {"enabled", "sampling", "theta", "grid_k", "theta_grid_k", "witness_spacing", "theta_from_samples"},
                   "audit.");
    c.audit.enabled = get_or(a, "enabled", true);
    c.audit.sampling = get_or(a, "sampling", false);
    c.audit.theta = get_or(a, "theta", 0.0);
    c.audit.options.grid_k = get_or<std::size_t>(a, "grid_k", c.audit.options.grid_k);
    c.audit.options.theta_grid_k = get_or<std::size_t>(a, "theta_grid_k", c.audit.options.theta_grid_k);
    c.audit.options.witness_spacing = get_or(a, "witness_spacing", 0.0);
    c.audit.options.theta_from_samples = get_or(a, "theta_from_samples", false);
  }
  if (j.contains("verify")) {
    const Json& v = j.at("verify");
    reject_unknown(v, {"enabled", "checks"}, "verify.");
    c.verify.enabled = get_or(v, "enabled", true);
    if (v.contains("checks"))
      for (const auto& n : v.at("checks")) c.verify.checks.insert(n.get<std::string>());
  }
  c.manifold_free = get_or(j, "manifold_free", false);
  c.out_dir = get_or<std::string>(j, "out_dir", c.out_dir);
  if (c.rho && !(*c.rho > 0.0)) throw Error("rho must be positive");
  return c;
}

Json config_to_json(const PipelineConfig& c) {
  Json j;
  j["manifold"] = {{"name", c.manifold.name}, {"radius", number(c.manifold.radius)}, {"major", number(c.manifold.major)},
                   {"minor", number(c.manifold.minor)}, {"d", c.manifold.d}, {"ambient", c.manifold.ambient},
                   {"lo", number(c.manifold.lo)}, {"hi", number(c.manifold.hi)}};
  j["sample"] = {{"method", c.sample.method}, {"count", c.sample.count}, {"epsilon", number(c.sample.epsilon)},
                 {"delta", number(c.sample.delta)}, {"eta", number(c.sample.eta)}, {"seed", c.sample.seed},
                 {"net_epsilon", number(c.sample.net_epsilon)}};
  j["rho"] = c.rho ? number(*c.rho) : Json("auto");
  j["c_ste"] = number(c.c_ste);
  j["perturb"] = {{"enabled", c.perturb.enabled}, {"c2", number(c.perturb.c2)}, {"c3", number(c.perturb.c3)},
                  {"max_rounds", c.perturb.max_rounds}, {"tuned", c.perturb.tuned}};
  j["audit"] = {{"enabled", c.audit.enabled}, {"sampling", c.audit.sampling}, {"theta", number(c.audit.theta)},
                {"grid_k", c.audit.options.grid_k}, {"theta_grid_k", c.audit.options.theta_grid_k},
                {"witness_spacing", number(c.audit.options.witness_spacing)},
                {"theta_from_samples", c.audit.options.theta_from_samples}};
  j["verify"] = {{"enabled", c.verify.enabled}, {"checks", c.verify.checks}};
  j["manifold_free"] = c.manifold_free;
  j["out_dir"] = c.out_dir;
  return j;
}

ModelPtr make_model(const ManifoldSpec& s) {
  auto amb = [&](std::size_t fallback) { return s.ambient ? s.ambient : fallback; };
  if (s.name == "circle") return make_circle(s.radius, amb(2));
  if (s.name == "sphere") {
    const std::size_t d = s.d ? s.d : 2;
    return make_sphere(s.radius, d, amb(d + 1));
  }
  if (s.name == "torus") return make_torus(s.major, s.minor);
  if (s.name == "flat_torus") return make_flat_torus(s.radius, amb(4));
  if (s.name == "plane") {
    const std::size_t d = s.d ? s.d : 2;
    return make_plane(d, amb(d + 1), s.lo, s.hi);
  }
  throw Error("unknown manifold '" + s.name + "'");
}

SampleOutput run_sample(const PipelineConfig& c, const ManifoldModel& model) {
  SampleOutput out;
  const auto& s = c.sample;
  if (s.method == "dense") {
    const DenseSample ds = sample_dense(model, {s.epsilon, s.delta, s.eta, s.seed});
    out.cloud = ds.cloud;
    out.epsilon = s.epsilon;
    out.provenance["certified_epsilon"] = number(ds.certified_epsilon);
    out.provenance["witness_count"] = ds.witness_count;
  } else if (s.method == "geodesic") {
    if (model.name() != "sphere" || model.intrinsic_dim() != 2 || model.ambient_dim() != 3)
      throw Error("geodesic sampling needs the 2-sphere in R^3");
    // Frequency whose 10 f^2 + 2 points come closest to the requested count.
    const auto f = static_cast<std::size_t>(
        std::max(1.0, std::round(std::sqrt(std::max(0.0, static_cast<double>(s.count) - 2.0) / 10.0))));
    const double r = model.project(Vec::Unit(3, 2)).norm();
    Rng rng(s.seed);
    out.cloud = PointCloud(3);
    for (const auto& m : geodesic_sphere(f, r)) out.cloud.push_back(normal_offset(model, m, s.delta, rng));
    out.provenance["frequency"] = f;
  } else {
    out.cloud = sample_lattice(model, s.count, s.delta, s.seed);
  }
  if (s.method != "dense") {
    const double scale = std::pow(model.measure() / std::max<double>(1.0, static_cast<double>(out.cloud.size())),
                                  1.0 / static_cast<double>(model.intrinsic_dim()));
    const HausdorffEstimate h = hausdorff_to_manifold(out.cloud, model, scale / 8.0);
    const double estimated = h.manifold_to_cloud_bound;
    out.epsilon = s.epsilon > 0.0 ? s.epsilon : estimated;
    if (s.epsilon > 0.0 && estimated > s.epsilon)
      out.warnings.push_back("configured epsilon is below the witness estimate " + std::to_string(estimated));
    out.provenance["epsilon_estimate"] = number(estimated);
    out.provenance["witness_count"] = h.witness_count;
  }
  if (s.net_epsilon > 0.0) {
    // The net covers the sample at radius net_epsilon.
    out.cloud = extract_net(out.cloud, s.net_epsilon);
    out.epsilon += s.net_epsilon;
    out.provenance["net_epsilon"] = number(s.net_epsilon);
  }
  if (s.delta > out.epsilon) out.warnings.push_back("delta exceeds epsilon");
  out.provenance["manifold"] = model.name();
  out.provenance["method"] = s.method;
  out.provenance["seed"] = s.seed;
  out.provenance["count"] = out.cloud.size();
  out.provenance["epsilon"] = number(out.epsilon);
  out.provenance["delta"] = number(s.delta);
  out.provenance["warnings"] = out.warnings;
  return out;
}

double resolve_rho(const PipelineConfig& c, double epsilon) {
  if (c.rho) return *c.rho;
  const double r = c.c_ste * epsilon;
  if (!(r > 0.0)) throw Error("auto rho needs a positive epsilon");
  return r;
}

PerturbOutput run_perturb(const PipelineConfig& c, const PointCloud& cloud, const ManifoldModel& model, double epsilon) {
  PerturbOutput out;
  const std::size_t d = model.intrinsic_dim();
  const double reach = model.reach();
  Json rep;
  if (c.perturb.tuned) {
    TunedParams t = default_params(epsilon, c.sample.eta, reach, d, c.c_ste, c.perturb.c2, c.perturb.c3);
    t.params.seed = c.sample.seed;
    t.params.max_rounds = c.perturb.max_rounds;
    out.params = t.params;
    rep["params"] = report::to_json(t);
  } else {
    const double rho = resolve_rho(c, epsilon);
    const double s = std::isfinite(reach) ? std::sqrt(rho / reach) * rho : 0.0;
    out.params.rho = rho;
    out.params.r_pert = c.sample.eta * epsilon / 20.0;
    out.params.height_min = c.perturb.c2 * s;
    out.params.protection_min = c.perturb.c3 * s;
    out.params.seed = c.sample.seed;
    out.params.max_rounds = c.perturb.max_rounds;
    rep["params"] = {{"rho", number(rho)}, {"r_pert", number(out.params.r_pert)},
                     {"height_min", number(out.params.height_min)}, {"protection_min", number(out.params.protection_min)},
                     {"seed", out.params.seed}, {"max_rounds", out.params.max_rounds}};
  }
  PerturbResult r = moser_tardos(cloud, out.params, d);
  out.cloud = std::move(r.cloud);
  out.trace = std::move(r.trace);
  rep["trace"] = report::to_json(out.trace);
  out.report = rep;
  return out;
}

FlatDelComplex run_reconstruct(const PipelineConfig& c, const PointCloud& cloud, ModelPtr model, double rho) {
  if (c.manifold_free) {
    auto k = flat_delaunay_manifold_free(cloud, rho, model->intrinsic_dim());
    k.model = model;
    return k;
  }
  return flat_delaunay(cloud, rho, model);
}

Json AuditOutput::to_json() const {
  Json j{{"pass", pass()}, {"quality", report::to_json(quality)}, {"structural", report::to_json(structural)}};
  if (sampling) j["sampling_safety"] = report::to_json(*sampling);
  return j;
}

AuditOutput run_audit(const PipelineConfig& c, const PointCloud& cloud, const ManifoldModel& model, double rho,
                      double epsilon) {
  AuditOutput out;
  AuditOptions qopt = c.audit.options;
  qopt.compute_protection_3rho = false;  // the sampling audit computes it when asked
  out.quality = quality_report(cloud, rho, model, qopt);
  out.structural = audit_structural(cloud, rho, model, c.audit.options);
  if (c.audit.sampling) {
    const double delta = std::max(c.sample.delta, out.quality.delta_estimate);
    double theta = c.audit.theta;
    if (!(theta > 0.0)) {
      // Smallest theta for which the angle condition can hold.
      const double arg = (rho + delta) / model.reach();
      const double base = c.audit.options.theta_from_samples ? out.quality.theta.sampled : out.quality.theta.bound;
      theta = arg <= 1.0 ? std::min(std::numbers::pi / 6, base + 2.0 * std::asin(arg)) : std::numbers::pi / 6;
    }
    out.sampling = audit_sampling_safety(cloud, rho, epsilon, delta, theta, model, c.audit.options);
  }
  return out;
}

VerificationReport run_verify(const PipelineConfig& c, const FlatDelComplex& k, double epsilon) {
  VerifyOptions opt;
  opt.checks = c.verify.checks;
  if (epsilon > 0.0) opt.epsilon = epsilon;
  opt.grid_k = c.audit.options.grid_k;
  opt.homeo.seed = c.sample.seed;
  return verify_complex(k, opt);
}

PipelineResult run_pipeline(const PipelineConfig& c) {
  PipelineResult r;
  const ModelPtr model = make_model(c.manifold);
  auto t0 = std::chrono::steady_clock::now();
  r.sample = run_sample(c, *model);
  r.seconds["sample"] = since(t0);
  PointCloud cloud = r.sample.cloud;
  double epsilon = r.sample.epsilon;
  if (c.perturb.enabled) {
    t0 = std::chrono::steady_clock::now();
    r.perturb = run_perturb(c, cloud, *model, epsilon);
    r.seconds["perturb"] = since(t0);
    cloud = r.perturb->cloud;
    epsilon = 21.0 * epsilon / 20.0;
  }
  r.rho = resolve_rho(c, r.sample.epsilon);
  t0 = std::chrono::steady_clock::now();
  r.complex = run_reconstruct(c, cloud, model, r.rho);
  r.seconds["reconstruct"] = since(t0);
  if (c.audit.enabled) {
    t0 = std::chrono::steady_clock::now();
    r.audit = run_audit(c, cloud, *model, r.rho, epsilon);
    r.seconds["audit"] = since(t0);
  }
  if (c.verify.enabled) {
    t0 = std::chrono::steady_clock::now();
    r.verification = run_verify(c, r.complex, epsilon);
    r.seconds["verify"] = since(t0);
  }
  return r;
}

}  // namespace flatdel

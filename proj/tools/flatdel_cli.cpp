#include "flatdel/io.hpp"
#include "flatdel/pipeline.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace flatdel;
using report::Json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Args {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> rho;
  bool manifold_free = false;
  std::vector<std::string> checks;
  std::string out;
  std::string cloud;
  std::string complex;
  std::string format = "auto";
};

PipelineConfig load_config(const Args& a) {
  if (a.config.empty()) throw UsageError("--config is required");
  PipelineConfig c;
  try {
    c = config_from_json(Json::parse(io::read_file(a.config)));
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (a.seed) c.sample.seed = *a.seed;
  if (a.rho) {
    if (!(*a.rho > 0.0)) throw UsageError("--rho must be positive");
    c.rho = *a.rho;
  }
  if (a.manifold_free) c.manifold_free = true;
  for (const auto& n : a.checks) c.verify.checks.insert(n);
  const auto& names = verification_check_names();
  for (const auto& n : c.verify.checks)
    if (std::find(names.begin(), names.end(), n) == names.end()) throw UsageError("unknown check '" + n + "'");
  if (!a.out.empty()) c.out_dir = a.out;
  try {
    make_model(c.manifold);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return c;
}

void write_json(const fs::path& p, const Json& j) { io::write_atomic(p, j.dump(2) + "\n"); }

void write_resolved(const PipelineConfig& c) { write_json(fs::path(c.out_dir) / "config.resolved.json", config_to_json(c)); }

io::Metadata cloud_meta(const PipelineConfig& c, const std::string& stage, double epsilon) {
  return {{"stage", stage},
          {"manifold", c.manifold.name},
          {"seed", std::to_string(c.sample.seed)},
          {"epsilon", io::format_double(epsilon)},
          {"delta", io::format_double(c.sample.delta)}};
}

struct LoadedCloud {
  PointCloud cloud;
  double epsilon = 0.0;
};

LoadedCloud load_cloud(const Args& a, const PipelineConfig& c, const ManifoldModel& model) {
  if (a.cloud.empty()) throw UsageError("--cloud is required");
  io::CsvCloud csv;
  try {
    csv = io::read_cloud_csv(a.cloud);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!csv.cloud.empty() && csv.cloud.dim() != model.ambient_dim())
    throw UsageError("cloud dimension does not match the manifold");
  LoadedCloud out{csv.cloud, c.sample.epsilon};
  for (const auto& [k, v] : csv.meta)
    if (k == "epsilon") out.epsilon = std::stod(v);
  return out;
}

std::string fmt_num(double x) { return std::isfinite(x) ? fmt::format("{:.6g}", x) : io::format_double(x); }

void print_verdict(const TheoremVerdict& v) {
  fmt::print("{} : {}\n", v.theorem, v.pass() ? "PASS" : "FAIL");
  fmt::print("  {:<34} {:<5} {:>14} {:>14} {:>14}\n", "check", "pass", "value", "threshold", "margin");
  for (const auto& c : v.checks)
    fmt::print("  {:<34} {:<5} {:>14} {:>14} {:>14}{}\n", c.name, c.pass ? "yes" : "no", fmt_num(c.value),
               fmt_num(c.threshold), fmt_num(c.margin), c.vacuous ? "  (vacuous)" : "");
}

void print_verification(const VerificationReport& r) {
  fmt::print("verification : {}\n", r.pass() ? "PASS" : "FAIL");
  fmt::print("  {:<18} {:<7} {:>9}  {}\n", "check", "result", "seconds", "summary");
  for (const auto& o : r.outcomes)
    fmt::print("  {:<18} {:<7} {:>9.3f}  {}\n", o.name, o.skipped ? "skip" : (o.pass ? "pass" : "FAIL"), o.seconds,
               o.summary);
}

void write_complex(const PipelineConfig& c, const FlatDelComplex& k) {
  const fs::path dir(c.out_dir);
  write_json(dir / "complex.json", report::complex_to_json(k));
  if (k.d == 2) io::write_atomic(dir / "complex.off", io::complex_to_off(k.points, k.simplices));
  io::write_atomic(dir / "edges.txt", io::complex_to_edge_list(k.simplices));
}

int cmd_sample(const Args& a) {
  const PipelineConfig c = load_config(a);
  const ModelPtr model = make_model(c.manifold);
  const SampleOutput s = run_sample(c, *model);
  for (const auto& w : s.warnings) fmt::print(stderr, "warning: {}\n", w);
  write_resolved(c);
  io::write_cloud_csv(fs::path(c.out_dir) / "cloud.csv", s.cloud, cloud_meta(c, "sample", s.epsilon));
  write_json(fs::path(c.out_dir) / "sample.json", s.provenance);
  fmt::print("sampled {} points on {} (epsilon {})\n", s.cloud.size(), model->name(), fmt_num(s.epsilon));
  return 0;
}

int cmd_perturb(const Args& a) {
  const PipelineConfig c = load_config(a);
  const ModelPtr model = make_model(c.manifold);
  const LoadedCloud in = load_cloud(a, c, *model);
  write_resolved(c);
  try {
    const PerturbOutput p = run_perturb(c, in.cloud, *model, in.epsilon);
    for (const auto& w : p.trace.warnings) fmt::print(stderr, "warning: {}\n", w);
    io::write_cloud_csv(fs::path(c.out_dir) / "perturbed.csv", p.cloud,
                        cloud_meta(c, "perturb", 21.0 * in.epsilon / 20.0));
    write_json(fs::path(c.out_dir) / "perturb.json", p.report);
    fmt::print("perturbed {} points in {} rounds\n", p.cloud.size(), p.trace.rounds);
    return 0;
  } catch (const RoundBudgetExhausted& e) {
    write_json(fs::path(c.out_dir) / "perturb.json", {{"error", e.what()}, {"trace", report::to_json(e.trace)}});
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}

int cmd_reconstruct(const Args& a) {
  const PipelineConfig c = load_config(a);
  const ModelPtr model = make_model(c.manifold);
  const LoadedCloud in = load_cloud(a, c, *model);
  write_resolved(c);
  const double rho = resolve_rho(c, in.epsilon);
  const FlatDelComplex k = run_reconstruct(c, in.cloud, model, rho);
  write_complex(c, k);
  std::vector<std::size_t> f(static_cast<std::size_t>(std::max(max_dimension(k.simplices), 0) + 1), 0);
  for (const auto& s : k.simplices) ++f[static_cast<std::size_t>(s.dim())];
  fmt::print("rho {} : {} simplices, f-vector [", fmt_num(rho), k.simplices.size());
  for (std::size_t i = 0; i < f.size(); ++i) fmt::print("{}{}", i ? ", " : "", f[i]);
  fmt::print("]{}\n", k.degeneracy.empty() ? "" : ", degenerate configurations reported");
  return 0;
}

int cmd_audit(const Args& a) {
  const PipelineConfig c = load_config(a);
  const ModelPtr model = make_model(c.manifold);
  const LoadedCloud in = load_cloud(a, c, *model);
  write_resolved(c);
  const double rho = resolve_rho(c, in.epsilon);
  const AuditOutput out = run_audit(c, in.cloud, *model, rho, in.epsilon);
  write_json(fs::path(c.out_dir) / "audit.json", out.to_json());
  print_verdict(out.structural);
  if (out.sampling) print_verdict(*out.sampling);
  return out.pass() ? 0 : 1;
}

int cmd_verify(const Args& a) {
  const PipelineConfig c = load_config(a);
  const ModelPtr model = make_model(c.manifold);
  const LoadedCloud in = load_cloud(a, c, *model);
  write_resolved(c);
  FlatDelComplex k;
  if (!a.complex.empty()) {
    try {
      k = report::complex_from_json(Json::parse(io::read_file(a.complex)), in.cloud, model);
    } catch (const Json::exception& e) {
      throw UsageError(std::string("complex: ") + e.what());
    }
  } else {
    k = run_reconstruct(c, in.cloud, model, resolve_rho(c, in.epsilon));
  }
  const VerificationReport r = run_verify(c, k, in.epsilon);
  write_json(fs::path(c.out_dir) / "verify.json", report::to_json(r));
  print_verification(r);
  return r.pass() ? 0 : 1;
}

int cmd_bench(const Args& a) {
  const PipelineConfig c = load_config(a);
  write_resolved(c);
  const auto t0 = std::chrono::steady_clock::now();
  const PipelineResult r = run_pipeline(c);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::vector<std::size_t> f(static_cast<std::size_t>(std::max(max_dimension(r.complex.simplices), 0) + 1), 0);
  for (const auto& s : r.complex.simplices) ++f[static_cast<std::size_t>(s.dim())];
  Json seconds = Json::object();
  for (const auto& [k, v] : r.seconds) seconds[k] = v;
  seconds["total"] = total;
  Json j{{"points", r.complex.points.size()},
         {"rho", report::number(r.rho)},
         {"simplices", r.complex.simplices.size()},
         {"f_vector", f},
         {"seconds", seconds}};
  if (r.perturb) j["perturb_rounds"] = r.perturb->trace.rounds;
  if (r.audit) j["audit_pass"] = r.audit->pass();
  if (r.verification) j["verify_pass"] = r.verification->pass();
  write_json(fs::path(c.out_dir) / "bench.json", j);
  fmt::print("{}\n", j.dump(2));
  const bool ok = (!r.audit || r.audit->pass()) && (!r.verification || r.verification->pass());
  return ok ? 0 : 1;
}

int cmd_export(const Args& a) {
  if (a.cloud.empty() || a.complex.empty()) throw UsageError("export needs --cloud and --complex");
  io::CsvCloud csv;
  FlatDelComplex k;
  try {
    csv = io::read_cloud_csv(a.cloud);
    k = report::complex_from_json(Json::parse(io::read_file(a.complex)), csv.cloud, nullptr);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("complex: ") + e.what());
  }
  std::string fmt_name = a.format;
  if (fmt_name == "auto") fmt_name = k.d == 2 ? "off" : "edges";
  std::string text;
  if (fmt_name == "off")
    text = io::complex_to_off(csv.cloud, k.simplices);
  else if (fmt_name == "edges")
    text = io::complex_to_edge_list(k.simplices);
  else
    throw UsageError("unknown export format '" + fmt_name + "'");
  if (a.out.empty())
    std::cout << text;
  else
    io::write_atomic(a.out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flat Delaunay complex reconstruction toolkit"};
  app.require_subcommand(1);
  Args a;
  auto common = [&](CLI::App* s, bool cloud, bool complex) {
    s->add_option("--config", a.config, "pipeline config (JSON)");
    s->add_option("--seed", a.seed, "override sample.seed");
    s->add_option("--out", a.out, "output directory");
    if (cloud) s->add_option("--cloud", a.cloud, "point cloud CSV");
    if (complex) s->add_option("--complex", a.complex, "complex JSON");
  };
  auto* sample = app.add_subcommand("sample", "sample a manifold model");
  common(sample, false, false);
  auto* perturb = app.add_subcommand("perturb", "Moser-Tardos perturbation of a cloud");
  common(perturb, true, false);
  auto* recon = app.add_subcommand("reconstruct", "build the flat Delaunay complex");
  common(recon, true, false);
  recon->add_option("--rho", a.rho, "scale");
  recon->add_flag("--manifold-free", a.manifold_free, "delloc route, no manifold queries");
  auto* audit = app.add_subcommand("audit", "audit the reconstruction hypotheses");
  common(audit, true, false);
  audit->add_option("--rho", a.rho, "scale");
  auto* verify = app.add_subcommand("verify", "verify the reconstruction conclusions");
  common(verify, true, true);
  verify->add_option("--rho", a.rho, "scale");
  verify->add_flag("--manifold-free", a.manifold_free, "delloc route when no --complex is given");
  verify->add_option("--check", a.checks, "run only these checks");
  auto* bench = app.add_subcommand("bench", "time the whole pipeline");
  common(bench, false, false);
  bench->add_option("--rho", a.rho, "scale");
  bench->add_flag("--manifold-free", a.manifold_free, "delloc route");
  bench->add_option("--check", a.checks, "verification checks");
  auto* exp = app.add_subcommand("export", "export a complex as OFF or an edge list");
  exp->add_option("--cloud", a.cloud, "point cloud CSV")->required();
  exp->add_option("--complex", a.complex, "complex JSON")->required();
  exp->add_option("--format", a.format, "off | edges | auto");
  exp->add_option("--out", a.out, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*sample) return cmd_sample(a);
    if (*perturb) return cmd_perturb(a);
    if (*recon) return cmd_reconstruct(a);
    if (*audit) return cmd_audit(a);
    if (*verify) return cmd_verify(a);
    if (*bench) return cmd_bench(a);
    if (*exp) return cmd_export(a);
  } catch (const UsageError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 2;
}

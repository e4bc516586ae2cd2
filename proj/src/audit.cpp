#include "flatdel/audit.hpp"

#include "flatdel/enumerate.hpp"
#include "flatdel/parallel.hpp"
#include "flatdel/simd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace flatdel {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

Check make_check(std::string name, double value, double threshold, bool pass, double margin) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = threshold;
  c.pass = pass;
  c.margin = margin;
  return c;
}

// Parallel min/max reduction over a simplex list.
template <class F>
double reduce_min(const std::vector<Simplex>& list, F&& f) {
  std::vector<double> v(list.size(), kInf);
  parallel_for(list.size(), [&](std::size_t i) { v[i] = f(list[i]); });
  double out = kInf;
  for (double x : v) out = std::min(out, x);
  return out;
}

double protection_of_simplex(const PointCloud& cloud, const Simplex& sigma, double rho, const Tolerance& tol) {
  const auto pts = gather(cloud, sigma);
  Sphere s;
  try {
    s = min_circumsphere(pts, tol);
  } catch (const DegenerateSimplex&) {
    return 0.0;
  }
  const AffineFlat flat = AffineFlat::through(pts, tol);
  const Ball b = smallest_enclosing_ball(pts, tol);
  double best = kInf;
  for (Index q : simd::ball_query(cloud, b.center, rho)) {
    if (sigma.contains(q)) continue;
    const Vec x = cloud.point(q);
    const double off = flat.distance(x);
    const double in = std::sqrt(std::max(0.0, (x - s.center).squaredNorm() - off * off));
    best = std::min(best, std::abs(in - s.radius));
  }
  return best;
}

double max_model_distance(const PointCloud& cloud, const ManifoldModel& model) {
  double out = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    try {
      out = std::max(out, model.distance(cloud.point(i)));
    } catch (const ProjectionUndefined&) {
      return kInf;
    }
  }
  return out;
}

}  // namespace

double separation(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  if (n < 2) return kInf;
  std::vector<double> best(n, kInf);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> d2;
    simd::squared_distances(cloud, cloud.point(i), d2);
    for (std::size_t j = i + 1; j < n; ++j) best[i] = std::min(best[i], d2[j]);
  });
  return std::sqrt(*std::min_element(best.begin(), best.end()));
}

double height_at_scale(const PointCloud& cloud, double rho, std::size_t d, const Tolerance& tol) {
  const auto list = rho_small_simplices(cloud, rho, d + 1, tol);
  return reduce_min(list, [&](const Simplex& s) { return height(cloud, s, tol); });
}

double theta_sampled(const PointCloud& cloud, const Simplex& sigma, const ManifoldModel& model, std::size_t grid_k,
                     const Tolerance& tol) {
  const auto pts = gather(cloud, sigma);
  std::vector<AffineFlat> flats;
  const AffineFlat aff = AffineFlat::through(pts, tol);
  if (aff.dim() != model.intrinsic_dim()) return kHalfPi;
  flats.push_back(aff);
  for (const auto& x : barycentric_grid(pts, grid_k)) {
    try {
      flats.push_back(model.tangent(model.project(x)));
    } catch (const ProjectionUndefined&) {
      return kHalfPi;
    }
  }
  double out = 0.0;
  for (std::size_t i = 0; i < flats.size(); ++i)
    for (std::size_t j = i + 1; j < flats.size(); ++j) out = std::max(out, angle_between_flats(flats[i], flats[j]));
  return out;
}

ThetaResult theta_at_scale(const PointCloud& cloud, double rho, std::size_t d, const ManifoldModel& model,
                           std::size_t grid_k, const Tolerance& tol) {
  ThetaResult out;
  const auto list = rho_small_simplices(cloud, rho, d + 1, tol);
  out.simplices = list.size();
  std::vector<double> sampled(list.size(), 0.0), bound(list.size(), 0.0);
  std::vector<char> oor(list.size(), 0);
  parallel_for(list.size(), [&](std::size_t i) {
    const Simplex& s = list[i];
    sampled[i] = theta_sampled(cloud, s, model, grid_k, tol);
    double delta_s = 0.0;
    for (Index v : s) delta_s = std::max(delta_s, model.distance(cloud.point(v)));
    try {
      bound[i] = std::min(kHalfPi, bound_theta_sigma(static_cast<int>(d), height(cloud, s, tol), rho, delta_s,
                                                     model.reach()));
    } catch (const OutOfRegime&) {
      bound[i] = kHalfPi;
      oor[i] = 1;
    }
  });
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.sampled = std::max(out.sampled, sampled[i]);
    out.bound = std::max(out.bound, bound[i]);
    out.bound_out_of_regime = out.bound_out_of_regime || oor[i];
  }
  return out;
}

double protection_at_scale(const PointCloud& cloud, double rho, std::size_t d, const Tolerance& tol) {
  const auto list = rho_small_simplices(cloud, rho, d + 1, tol);
  return reduce_min(list, [&](const Simplex& s) { return protection_of_simplex(cloud, s, rho, tol); });
}

QualityReport quality_report(const PointCloud& cloud, double rho, const ManifoldModel& model, const AuditOptions& opt,
                             const Tolerance& tol) {
  QualityReport q;
  q.rho = rho;
  q.d = model.intrinsic_dim();
  const double spacing = opt.witness_spacing > 0.0 ? opt.witness_spacing : rho / 16.0;
  if (!cloud.empty()) {
    const HausdorffEstimate h = hausdorff_to_manifold(cloud, model, spacing);
    q.epsilon_estimate = h.manifold_to_cloud;
    q.epsilon_bound = h.manifold_to_cloud_bound;
    q.delta_estimate = h.cloud_to_manifold;
    q.witness_count = h.witness_count;
  }
  q.separation = separation(cloud);
  q.height = height_at_scale(cloud, rho, q.d, tol);
  q.theta = theta_at_scale(cloud, rho, q.d, model, opt.theta_grid_k, tol);
  q.rho_small_simplices = q.theta.simplices;
  q.protection = protection_at_scale(cloud, rho, q.d, tol);
  if (opt.compute_protection_3rho) q.protection_3rho = protection_at_scale(cloud, 3.0 * rho, q.d, tol);
  q.notes.push_back("sampled Theta is a grid estimate over the projected hull and may under-estimate");
  if (q.theta.bound_out_of_regime) q.notes.push_back("analytic Theta bound out of regime for some simplices; pi/2 used");
  if (q.rho_small_simplices == 0) q.notes.push_back("no rho-small d-simplex: height and protection are vacuous");
  return q;
}

bool TheoremVerdict::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* TheoremVerdict::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

struct LocalStarDiag {
  double min_projected_gap = kInf;
  std::pair<Index, Index> gap_pair{0, 0};
  bool covered = true;
  std::string euclid_failure;
  double min_protection = kInf;
  bool degenerate = false;
};

LocalStarDiag diagnose_star(const PointCloud& cloud, const Vec& m, double rho, const ManifoldModel& model,
                            const Tolerance& tol) {
  LocalStarDiag out;
  const auto ball = simd::ball_query(cloud, m, rho);
  if (ball.empty()) {
    out.covered = false;
    out.euclid_failure = "empty neighborhood";
    return out;
  }
  const AffineFlat t = model.tangent(m);
  const FlatPointSet fps = make_flat_point_set(cloud, ball, t);
  for (std::size_t i = 0; i < fps.size(); ++i)
    for (std::size_t j = i + 1; j < fps.size(); ++j) {
      const double g = (fps.coords(i) - fps.coords(j)).norm();
      if (g < out.min_projected_gap) {
        out.min_projected_gap = g;
        out.gap_pair = {fps.source[i], fps.source[j]};
      }
    }
  const DelaunayComplex del = delaunay_complex(fps, tol);
  out.degenerate = !del.degeneracy.empty();
  const StarResult star = star_in_flat(fps, del, t.base, tol);
  const std::size_t d = t.dim();
  std::map<Simplex, int> facet_count;
  std::size_t tops = 0;
  for (const auto& s : star.simplices) {
    if (s.size() != d + 1) continue;
    ++tops;
    for (const auto& f : s.facets()) ++facet_count[f];
    std::vector<Index> others(fps.source.begin(), fps.source.end());
    out.min_protection = std::min(out.min_protection, protection_of(fps, s, others, tol));
  }
  if (tops == 0) {
    out.covered = false;
    out.euclid_failure = "no d-simplex covers m";
    return out;
  }
  const Vec mc = t.coords(t.base);
  for (const auto& [f, c] : facet_count) {
    if (c > 2) {
      out.euclid_failure = "facet " + f.str() + " shared by " + std::to_string(c) + " star simplices";
      return out;
    }
    if (c == 1) {
      std::vector<Vec> fp;
      for (Index v : f) fp.push_back(fps.coords(*fps.local_index(v)));
      const Barycentric bc = barycentric(fp, mc);
      if (bc.residual <= tol.ortho * fps.scale() && bc.lambda.minCoeff() >= -tol.hull) {
        out.euclid_failure = "m lies on boundary facet " + f.str() + " of its star";
        return out;
      }
    }
  }
  return out;
}

}  // namespace

TheoremVerdict audit_structural(const PointCloud& cloud, double rho, const ManifoldModel& model, const AuditOptions& opt,
                                const Tolerance& tol) {
  TheoremVerdict v;
  v.theorem = "structural";
  const double reach = model.reach();
  const std::size_t d = model.intrinsic_dim();
  v.params = {{"rho", rho}, {"reach", reach}, {"d", static_cast<double>(d)}, {"n", static_cast<double>(cloud.size())}};

  v.checks.push_back(make_check("rho_below_half_reach", rho, reach / 2.0, rho < reach / 2.0, reach / 2.0 - rho));
  const double off = max_model_distance(cloud, model);
  v.checks.push_back(make_check("cloud_in_rho_offset", off, rho, off <= rho, rho - off));

  const auto list = rho_small_simplices(cloud, rho, d + 1, tol);
  v.params["rho_small_simplices"] = static_cast<double>(list.size());

  // (1) injectivity of pi_M on each hull: Theta < pi/2, falling back on a sampled collision test.
  {
    std::vector<double> worst(list.size(), 0.0);
    std::vector<std::string> wit(list.size());
    parallel_for(list.size(), [&](std::size_t i) {
      const Simplex& s = list[i];
      double delta_s = 0.0;
      for (Index u : s) delta_s = std::max(delta_s, model.distance(cloud.point(u)));
      double th = kHalfPi;
      try {
        th = bound_theta_sigma(static_cast<int>(d), height(cloud, s, tol), rho, delta_s, reach);
      } catch (const OutOfRegime&) {
      }
      if (th < kHalfPi) {
        worst[i] = th;
        return;
      }
      th = theta_sampled(cloud, s, model, opt.theta_grid_k, tol);
      worst[i] = th;
      const auto grid = barycentric_grid(gather(cloud, s), opt.grid_k);
      std::vector<Vec> proj;
      try {
        for (const auto& x : grid) proj.push_back(model.project(x));
      } catch (const ProjectionUndefined&) {
        worst[i] = kHalfPi;
        wit[i] = s.str() + ": hull meets the medial axis";
        return;
      }
      for (std::size_t a = 0; a < proj.size(); ++a)
        for (std::size_t b = a + 1; b < proj.size(); ++b)
          if ((proj[a] - proj[b]).norm() <= tol.ortho * (grid[a] - grid[b]).norm()) {
            worst[i] = kHalfPi;
            wit[i] = s.str() + ": grid points " + vec_str(grid[a]) + " and " + vec_str(grid[b]) + " collide";
            return;
          }
      if (th >= kHalfPi) wit[i] = s.str() + ": sampled Theta reaches pi/2";
    });
    Check c = make_check("proj_M_injective_on_hulls", 0.0, kHalfPi, true, 0.0);
    for (std::size_t i = 0; i < list.size(); ++i) {
      c.value = std::max(c.value, worst[i]);
      if (!wit[i].empty() && c.witness.empty()) c.witness = wit[i];
    }
    c.pass = c.value < kHalfPi;
    c.margin = kHalfPi - c.value;
    c.vacuous = list.empty();
    c.note = "Theta(sigma) < pi/2 from the analytic bound, else from grid samples plus a collision test";
    v.checks.push_back(std::move(c));
  }

  // (2)-(4) at sampled manifold points: projections of P plus a witness grid.
  std::vector<Vec> ms;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    try {
      ms.push_back(model.project(cloud.point(i)));
    } catch (const ProjectionUndefined&) {
    }
  }
  const double spacing = opt.witness_spacing > 0.0 ? opt.witness_spacing : rho / 4.0;
  for (auto& w : model.witness_grid(spacing)) ms.push_back(std::move(w));
  v.params["sampled_m"] = static_cast<double>(ms.size());
  std::vector<LocalStarDiag> diag(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) { diag[i] = diagnose_star(cloud, ms[i], rho, model, tol); });
  {
    Check c2 = make_check("tangent_projection_injective", kInf, 0.0, true, 0.0);
    Check c3 = make_check("star_locally_euclidean", 0.0, 0.0, true, 0.0);
    Check c4 = make_check("star_geometrically_realized", kInf, 0.0, true, 0.0);
    std::size_t bad3 = 0, bad4 = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto& g = diag[i];
      if (g.min_projected_gap < c2.value) {
        c2.value = g.min_projected_gap;
        c2.witness = "m=" + vec_str(ms[i]) + " points " + std::to_string(g.gap_pair.first) + "," +
                     std::to_string(g.gap_pair.second);
      }
      if (!g.covered || !g.euclid_failure.empty()) {
        if (bad3++ == 0) c3.witness = "m=" + vec_str(ms[i]) + ": " + g.euclid_failure;
      }
      if (g.degenerate || !(g.min_protection > 0.0)) {
        if (bad4++ == 0)
          c4.witness = "m=" + vec_str(ms[i]) + (g.degenerate ? ": cospherical projected neighbors" : ": unprotected star simplex");
      }
      c4.value = std::min(c4.value, g.degenerate ? 0.0 : g.min_protection);
    }
    const double scale = 2.0 * rho;
    c2.threshold = tol.degenerate * scale;
    c2.pass = c2.value > c2.threshold;
    c2.margin = c2.value - c2.threshold;
    c3.value = static_cast<double>(bad3);
    c3.pass = bad3 == 0;
    c3.margin = -c3.value;
    c3.note = "star d-simplices cover m, boundary facets avoid m, no facet shared by more than two";
    c4.pass = bad4 == 0;
    c4.margin = c4.value;
    c4.note = "star d-simplices protected (> 0) and no cospherical groups";
    v.checks.push_back(std::move(c2));
    v.checks.push_back(std::move(c3));
    v.checks.push_back(std::move(c4));
  }

  // (5) agreement of prestars on a barycentric grid plus c_sigma.
  {
    std::vector<char> bad(list.size(), 0);
    std::vector<std::string> wit(list.size());
    parallel_for(list.size(), [&](std::size_t i) {
      try {
        const Agreement a = prestars_in_agreement(cloud, list[i], rho, model, opt.grid_k, tol);
        if (!a.agree) {
          bad[i] = 1;
          wit[i] = list[i].str() + ": anchors " + vec_str(a.anchors[a.witness->first]) + " and " +
                   vec_str(a.anchors[a.witness->second]) + " disagree";
        }
      } catch (const Error& e) {
        bad[i] = 1;
        wit[i] = list[i].str() + ": " + e.what();
      }
    });
    Check c = make_check("prestars_in_agreement", 0.0, 0.0, true, 0.0);
    for (std::size_t i = 0; i < list.size(); ++i)
      if (bad[i]) {
        if (c.value == 0.0) c.witness = wit[i];
        c.value += 1.0;
      }
    c.pass = c.value == 0.0;
    c.margin = -c.value;
    c.vacuous = list.empty();
    c.note = "sampled on a barycentric grid of resolution 1/" + std::to_string(opt.grid_k);
    v.checks.push_back(std::move(c));
  }
  v.notes.push_back("structural conditions quantified over all m in M are checked at sampled m only");
  return v;
}

double distortion_budget(double delta, double rho, double theta) { return 4.0 * delta * theta + 4.0 * rho * theta * theta; }

TheoremVerdict audit_sampling_safety(const PointCloud& cloud, double rho, double epsilon, double delta, double theta,
                                     const ManifoldModel& model, const AuditOptions& opt, const Tolerance& tol) {
  TheoremVerdict v;
  v.theorem = "sampling_safety";
  const double reach = model.reach();
  const std::size_t d = model.intrinsic_dim();
  const double a = distortion_budget(delta, rho, theta);
  v.params = {{"epsilon", epsilon}, {"delta", delta}, {"rho", rho}, {"theta", theta},
              {"A", a},             {"reach", reach}, {"d", static_cast<double>(d)}};

  v.checks.push_back(make_check("theta_le_pi_over_6", theta, std::numbers::pi / 6, theta <= std::numbers::pi / 6,
                                std::numbers::pi / 6 - theta));
  v.checks.push_back(make_check("delta_le_epsilon", delta, epsilon, delta <= epsilon, epsilon - delta));
  v.checks.push_back(make_check("sixteen_epsilon_le_rho", 16.0 * epsilon, rho, 16.0 * epsilon <= rho, rho - 16.0 * epsilon));
  v.checks.push_back(make_check("rho_lt_quarter_reach", rho, reach / 4.0, rho < reach / 4.0, reach / 4.0 - rho));

  AuditOptions qopt = opt;
  if (qopt.witness_spacing <= 0.0) qopt.witness_spacing = epsilon / 20.0;
  qopt.compute_protection_3rho = true;
  const QualityReport q = quality_report(cloud, rho, model, qopt, tol);
  v.params["witness_count"] = static_cast<double>(q.witness_count);
  v.params["epsilon_estimate"] = q.epsilon_estimate;

  {
    Check c = make_check("delta_accurate", q.delta_estimate, delta, q.delta_estimate <= delta * (1.0 + tol.ortho) + tol.ortho * rho,
                         delta - q.delta_estimate);
    v.checks.push_back(std::move(c));
    Check e = make_check("epsilon_dense", q.epsilon_bound, epsilon, q.epsilon_bound <= epsilon, epsilon - q.epsilon_bound);
    e.note = "witness estimate " + std::to_string(q.epsilon_estimate) + " plus spacing " + std::to_string(qopt.witness_spacing);
    v.checks.push_back(std::move(e));
  }
  {
    const double arg = (rho + delta) / reach;
    const double thr = arg <= 1.0 ? theta - 2.0 * std::asin(arg) : -kInf;
    const double val = opt.theta_from_samples ? q.theta.sampled : q.theta.bound;
    Check c = make_check("safety_angle", val, thr, val <= thr, thr - val);
    c.vacuous = q.rho_small_simplices == 0;
    c.note = opt.theta_from_samples ? "judged on sampled Theta (not sound); bound " + std::to_string(q.theta.bound)
                                    : "judged on the analytic Theta bound; sampled " + std::to_string(q.theta.sampled);
    if (q.theta.bound_out_of_regime && !opt.theta_from_samples) c.note += "; bound out of regime for some simplices";
    v.checks.push_back(std::move(c));
  }
  {
    const double thr = 2.0 * a + 6.0 * delta + 2.0 * rho * rho / reach;
    v.checks.push_back(make_check("safety_separation", q.separation, thr, q.separation > thr, q.separation - thr));
  }
  {
    Check h = make_check("safety_height_positive", q.height, 0.0, q.height > 0.0, q.height);
    h.vacuous = std::isinf(q.height);
    v.checks.push_back(std::move(h));
    const double thr = std::isinf(q.height) ? 2.0 * a
                       : q.height > 0.0    ? 2.0 * a * (1.0 + 4.0 * static_cast<double>(d) * epsilon / q.height)
                                           : kInf;
    Check p = make_check("safety_protection", q.protection_3rho, thr, q.protection_3rho > thr, q.protection_3rho - thr);
    p.vacuous = std::isinf(q.protection_3rho);
    p.note = "Protection(P, 3 rho)";
    v.checks.push_back(std::move(p));
  }
  for (const auto& n : q.notes) v.notes.push_back(n);
  v.params["separation"] = q.separation;
  v.params["height"] = q.height;
  v.params["theta_sampled"] = q.theta.sampled;
  v.params["theta_bound"] = q.theta.bound;
  v.params["protection"] = q.protection;
  v.params["protection_3rho"] = q.protection_3rho;
  return v;
}

std::vector<Anchor> standard_neighborhood(const PointCloud& cloud, const Simplex& sigma, const ManifoldModel& model,
                                          std::size_t grid_k, const Tolerance& tol) {
  const auto pts = gather(cloud, sigma);
  std::vector<Anchor> out;
  out.push_back({smallest_enclosing_ball(pts, tol).center, AffineFlat::through(pts, tol)});
  for (const auto& x : barycentric_grid(pts, grid_k)) {
    const Vec xs = model.project(x);
    out.push_back({xs, model.tangent(xs)});
  }
  return out;
}

Stability delaunay_stable(const PointCloud& cloud, const Simplex& sigma, double rho, const std::vector<Anchor>& anchors,
                          const Tolerance& tol) {
  Stability out;
  for (const auto& a : anchors) {
    bool in = false;
    if (a.flat.dim() + 1 == sigma.size()) in = delaunay_membership(cloud, sigma, rho, a.h, a.flat, tol);
    out.membership.push_back(in);
  }
  for (std::size_t i = 1; i < out.membership.size(); ++i)
    if (out.membership[i] != out.membership[0]) {
      out.stable = false;
      out.witness = std::make_pair(std::size_t{0}, i);
      break;
    }
  return out;
}

}  // namespace flatdel

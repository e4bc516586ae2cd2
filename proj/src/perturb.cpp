#include "flatdel/perturb.hpp"

#include "flatdel/enumerate.hpp"
#include "flatdel/parallel.hpp"
#include "flatdel/simd.hpp"

#include <algorithm>
#include <cmath>

namespace flatdel {

PcaTangent pca_tangent(const PointCloud& cloud, Index p, double radius, std::size_t d, double gap_tol) {
  const Vec center = cloud.point(p);
  const std::vector<Index> nb = simd::ball_query(cloud, center, radius);
  if (nb.size() < d + 1) throw InsufficientNeighbors("PCA needs at least d+1 points in the ball");
  const auto n = static_cast<Eigen::Index>(cloud.dim());
  Vec mean = Vec::Zero(n);
  for (Index i : nb) mean += cloud.point(i);
  mean /= static_cast<double>(nb.size());
  Mat c = Mat::Zero(n, n);
  for (Index i : nb) {
    const Vec x = cloud.point(i) - mean;
    c.noalias() += x * x.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(c);
  if (es.info() != Eigen::Success) throw Error("eigen-decomposition failed");
  // Eigen sorts ascending.
  PcaTangent out;
  out.point = p;
  out.spectrum = es.eigenvalues().reverse();
  const Mat top = es.eigenvectors().rightCols(static_cast<Eigen::Index>(d)).rowwise().reverse();
  out.flat = AffineFlat::from_directions(center, top);
  const double ld = out.spectrum[static_cast<Eigen::Index>(d - 1)];
  const double next = static_cast<Eigen::Index>(d) < n ? out.spectrum[static_cast<Eigen::Index>(d)] : 0.0;
  out.gap = ld - next;
  out.ill_conditioned = !(out.gap > gap_tol * std::max(out.spectrum[0], 1e-300));
  return out;
}

Vec reset_point(const Vec& p, const AffineFlat& vp, double r_pert, Rng& rng) {
  if (r_pert <= 0.0 || vp.dim() == 0) return p;
  const auto d = static_cast<Eigen::Index>(vp.dim());
  Vec g(d);
  double len = 0.0;
  do {
    for (Eigen::Index i = 0; i < d; ++i) g[i] = rng.normal();
    len = g.norm();
  } while (len < 1e-12);
  const double r = r_pert * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  return p + vp.basis * (r * g / len);
}

TunedParams default_params(double epsilon, double eta, double reach, std::size_t d, double c_ste, double c2, double c3) {
  if (c_ste < 32.0) throw OutOfRegime("C_ste must be at least 32");
  if (!(epsilon >= 0.0) || !(eta >= 0.0) || !(reach > 0.0)) throw Error("invalid perturbation inputs");
  if (c2 < 0.0 || c3 < 0.0) throw Error("threshold constants must be nonnegative");
  (void)d;
  TunedParams t;
  t.epsilon = epsilon;
  t.eta = eta;
  t.reach = reach;
  t.c_ste = c_ste;
  const double rho = c_ste * epsilon;
  t.params.rho = rho;
  t.delta = rho * rho / reach;
  t.params.r_pert = eta * epsilon / 20.0;
  const double s = std::sqrt(rho / reach) * rho;
  t.params.height_min = c2 * s;
  t.params.protection_min = c3 * s;
  t.epsilon_prime = 21.0 * epsilon / 20.0;
  t.delta_prime = 2.0 * t.delta;
  if (t.delta > epsilon) t.warnings.push_back("delta = rho^2/R exceeds epsilon: the regime needs smaller epsilon/R");
  if (rho >= reach / 4.0) t.warnings.push_back("rho >= R/4");
  return t;
}

namespace {

// Height check, then protection over p' in B(c_sigma, 3 rho) ascending.
std::optional<BadEvent> event_of(const PointCloud& cloud, const Simplex& s, const PerturbParams& prm, const Tolerance& tol) {
  const auto pts = gather(cloud, s);
  const double h = height(pts, tol);
  if (h < prm.height_min || is_degenerate(pts, tol)) {
    BadEvent e;
    e.kind = BadEvent::Kind::height;
    e.sigma = s;
    e.correlated = s.vertices();
    e.value = h;
    e.threshold = prm.height_min;
    return e;
  }
  if (prm.protection_min <= 0.0) return std::nullopt;
  const Sphere sp = min_circumsphere(pts, tol);
  const AffineFlat flat = AffineFlat::through(pts, tol);
  const Ball b = smallest_enclosing_ball(pts, tol);
  for (Index q : simd::ball_query(cloud, b.center, 3.0 * prm.rho)) {
    if (s.contains(q)) continue;
    const Vec x = cloud.point(q);
    const double off = flat.distance(x);
    const double in = std::sqrt(std::max(0.0, (x - sp.center).squaredNorm() - off * off));
    const double gap = std::abs(in - sp.radius);
    if (gap < prm.protection_min) {
      BadEvent e;
      e.kind = BadEvent::Kind::protection;
      e.sigma = s;
      e.point = q;
      e.correlated = s.vertices();
      e.correlated.insert(std::lower_bound(e.correlated.begin(), e.correlated.end(), q), q);
      e.value = gap;
      e.threshold = prm.protection_min;
      return e;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<BadEvent> find_bad_event(const PointCloud& cloud, const PerturbParams& params, std::size_t d,
                                       const Tolerance& tol) {
  if (params.height_min <= 0.0 && params.protection_min <= 0.0) return std::nullopt;
  const auto list = rho_small_simplices(cloud, params.rho, d + 1, tol);
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (list.size() + kChunk - 1) / kChunk;
  std::vector<std::optional<BadEvent>> found(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(list.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i)
      if (auto e = event_of(cloud, list[i], params, tol)) {
        found[c] = std::move(e);
        return;
      }
  });
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

PerturbResult moser_tardos(const PointCloud& cloud, const PerturbParams& params, std::size_t d, const Tolerance& tol) {
  if (params.rho < 0.0 || params.r_pert < 0.0 || params.height_min < 0.0 || params.protection_min < 0.0)
    throw Error("perturbation parameters must be nonnegative");
  if (params.max_rounds < 1) throw Error("max_rounds must be at least 1");
  PerturbResult out;
  out.cloud = cloud;
  if (cloud.empty()) return out;
  Rng rng(params.seed);
  // Step 1: tangents from the original cloud.
  std::vector<AffineFlat> vp(cloud.size());
  auto compute_tangents = [&](const PointCloud& src) {
    parallel_for(src.size(), [&](std::size_t i) {
      try {
        vp[i] = pca_tangent(src, static_cast<Index>(i), 3.0 * params.rho, d).flat;
      } catch (const InsufficientNeighbors&) {
        vp[i] = AffineFlat{src.point(i), Mat::Zero(static_cast<Eigen::Index>(src.dim()), 0)};
      }
      vp[i].base = cloud.point(i);
    });
  };
  compute_tangents(cloud);
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (vp[i].dim() < d) {
      out.trace.warnings.push_back("point " + std::to_string(i) + " has fewer than d+1 neighbors within 3 rho; never moved");
    }
  // Step 2: reset every point.
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out.cloud.set_point(i, reset_point(cloud.point(i), vp[i], params.r_pert, rng));
    ++out.trace.resets;
  }
  // Step 3: resample the points correlated to the first bad event.
  while (auto e = find_bad_event(out.cloud, params, d, tol)) {
    if (out.trace.rounds >= params.max_rounds)
      throw RoundBudgetExhausted("Moser-Tardos round budget exhausted", out.trace);
    ++out.trace.rounds;
    if (e->kind == BadEvent::Kind::height)
      ++out.trace.height_events;
    else
      ++out.trace.protection_events;
    for (Index i : e->correlated) {
      out.cloud.set_point(i, reset_point(cloud.point(i), vp[i], params.r_pert, rng));
      ++out.trace.resets;
    }
    if (out.trace.events.size() < 1000) out.trace.events.push_back(std::move(*e));
    if (params.recompute_tangents) compute_tangents(out.cloud);
  }
  return out;
}

}  // namespace flatdel

#include "flatdel/fdc.hpp"

#include "flatdel/enumerate.hpp"
#include "flatdel/parallel.hpp"
#include "flatdel/simd.hpp"

#include <algorithm>
#include <functional>
#include <iterator>

namespace flatdel {

namespace {

void check_injective(const FlatPointSet& fps, const Tolerance& tol) {
  const double floor = tol.degenerate * fps.scale();
  const std::size_t n = fps.size(), d = fps.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double t = fps.cols[k][i] - fps.cols[k][j];
        s += t * t;
      }
      if (std::sqrt(s) <= floor)
        throw InjectivityViolation("two points share a tangent projection", fps.source[i], fps.source[j]);
    }
}

std::vector<Vec> project_coords(const AffineFlat& flat, const std::vector<Vec>& pts) {
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(flat.coords(p));
  return out;
}

void fill_meta(FlatDelComplex& k, const Tolerance& tol) {
  std::vector<Simplex> list(k.simplices.begin(), k.simplices.end());
  std::vector<SimplexMeta> metas(list.size());
  parallel_for(list.size(), [&](std::size_t i) {
    const Simplex& s = list[i];
    SimplexMeta& m = metas[i];
    if (s.size() < 2) {
      m.circumradius = 0.0;
      m.gabriel = true;
      m.delloc = s.size() == k.d + 1 && is_delloc(k.points, s, k.rho, tol);
      return;
    }
    const auto pts = gather(k.points, s);
    m.seb_radius = smallest_enclosing_ball(pts, tol).radius;
    m.height = height(pts, tol);
    try {
      m.circumradius = min_circumsphere(pts, tol).radius;
      m.gabriel = is_gabriel(k.points, s, tol);
    } catch (const DegenerateSimplex&) {
      m.circumradius = kInf;
      m.gabriel = false;
    }
    if (s.size() == k.d + 1) m.delloc = is_delloc(k.points, s, k.rho, tol);
  });
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto it = k.meta.find(list[i]);
    std::vector<Index> prov;
    if (it != k.meta.end()) prov = std::move(it->second.provenance);
    metas[i].provenance = std::move(prov);
    k.meta[list[i]] = std::move(metas[i]);
  }
  k.closed = closure(k.simplices) == k.simplices;
}

}  // namespace

StarResult star_at(const Vec& m, const PointCloud& cloud, double rho, const ManifoldModel& model, const Tolerance& tol) {
  if (rho <= 0.0) return {};
  const std::vector<Index> idx = simd::ball_query(cloud, m, rho);
  if (idx.empty()) return {};
  const AffineFlat t = model.tangent(m);
  const FlatPointSet fps = make_flat_point_set(cloud, idx, t);
  return star_in_flat(fps, t.base, tol);
}

Prestar prestar_at(const Vec& x, const PointCloud& cloud, double rho, const ManifoldModel& model, const Tolerance& tol) {
  Prestar out;
  out.anchor = x;
  out.rho = rho;
  const double dist = model.distance(x);
  if (dist >= model.reach()) throw ProjectionUndefined("anchor is farther than the reach from the manifold");
  out.projected = model.project(x);
  if (rho <= 0.0) return out;
  out.neighborhood = simd::ball_query(cloud, out.projected, rho);
  if (out.neighborhood.empty()) return out;
  const AffineFlat t = model.tangent(out.projected);
  const FlatPointSet fps = make_flat_point_set(cloud, out.neighborhood, t);
  check_injective(fps, tol);
  StarResult star = star_in_flat(fps, t.base, tol);
  out.simplices = std::move(star.simplices);
  out.boundary_hits = std::move(star.boundary_hits);
  out.degeneracy = std::move(star.degeneracy);
  return out;
}

bool delaunay_membership(const PointCloud& cloud, const Simplex& sigma, double rho, const Vec& h,
                         const AffineFlat& flat, const Tolerance& tol) {
  if (sigma.size() != flat.dim() + 1) throw DimensionMismatch("membership needs a d-simplex and a d-flat");
  const std::vector<Index> ball = simd::ball_query(cloud, h, rho);
  for (Index v : sigma)
    if (!std::binary_search(ball.begin(), ball.end(), v)) return false;
  const FlatPointSet fps = make_flat_point_set(cloud, ball, flat);
  return is_delaunay_in_flat(fps, sigma, tol);
}

bool in_prestar(const PointCloud& cloud, const Simplex& sigma, double rho, const ManifoldModel& model, const Vec& x,
                const Tolerance& tol) {
  const Vec xs = model.project(x);
  const AffineFlat t = model.tangent(xs);
  if (!delaunay_membership(cloud, sigma, rho, xs, t, tol)) return false;
  const auto proj = project_coords(t, gather(cloud, sigma));
  const Barycentric bc = barycentric(proj, t.coords(xs));
  return bc.lambda.minCoeff() >= -tol.hull;
}

FlatDelComplex flat_delaunay(const PointCloud& cloud, double rho, ModelPtr model, const Tolerance& tol) {
  if (!model) throw Error("flat Delaunay complex needs a manifold model");
  if (cloud.size() > 0 && cloud.dim() != model->ambient_dim())
    throw DimensionMismatch("cloud and manifold live in different spaces");
  FlatDelComplex k;
  k.points = cloud;
  k.rho = rho;
  k.d = model->intrinsic_dim();
  k.model = model;
  std::vector<Prestar> stars(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t p) {
    try {
      stars[p] = prestar_at(cloud.point(p), cloud, rho, *model, tol);
    } catch (const InjectivityViolation& e) {
      throw InjectivityViolation("prestar of point " + std::to_string(p) + ": " + e.what(), e.first, e.second);
    } catch (const ProjectionUndefined& e) {
      throw ProjectionUndefined("prestar of point " + std::to_string(p) + ": " + e.what());
    }
  });
  for (std::size_t p = 0; p < stars.size(); ++p) {
    for (const auto& s : stars[p].simplices) {
      k.simplices.insert(s);
      k.meta[s].provenance.push_back(static_cast<Index>(p));
    }
    for (const auto& b : stars[p].boundary_hits) k.boundary_hits.push_back(b);
    for (const auto& g : stars[p].degeneracy.cospherical) k.degeneracy.cospherical.insert(g);
  }
  fill_meta(k, tol);
  return k;
}

bool is_delloc(const PointCloud& cloud, const Simplex& sigma, double rho, const Tolerance& tol) {
  const auto pts = gather(cloud, sigma);
  if (pts.size() < 2) return pts.size() == 1 && rho >= 0.0;
  if (is_degenerate(pts, tol)) return false;
  const Ball b = smallest_enclosing_ball(pts, tol);
  if (b.radius > rho * (1.0 + tol.sphere)) return false;
  std::vector<Index> ball = simd::ball_query(cloud, b.center, rho);
  for (Index v : sigma)
    if (!std::binary_search(ball.begin(), ball.end(), v)) ball.insert(std::lower_bound(ball.begin(), ball.end(), v), v);
  const AffineFlat flat = AffineFlat::through(pts, tol);
  if (flat.dim() + 1 != sigma.size()) return false;
  const FlatPointSet fps = make_flat_point_set(cloud, ball, flat);
  return is_delaunay_in_flat(fps, sigma, tol);
}

SimplexSet enumerate_delloc(const PointCloud& cloud, double rho, std::size_t d, const Tolerance& tol) {
  SimplexSet out;
  if (rho <= 0.0) return out;
  const std::vector<Simplex> cand = rho_small_simplices(cloud, rho, d + 1, tol);
  std::vector<char> keep(cand.size(), 0);
  parallel_for(cand.size(), [&](std::size_t i) { keep[i] = is_delloc(cloud, cand[i], rho, tol) ? 1 : 0; });
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (keep[i]) out.insert(cand[i]);
  return out;
}

FlatDelComplex flat_delaunay_manifold_free(const PointCloud& cloud, double rho, std::size_t d, const Tolerance& tol) {
  FlatDelComplex k;
  k.points = cloud;
  k.rho = rho;
  k.d = d;
  k.simplices = closure(enumerate_delloc(cloud, rho, d, tol));
  fill_meta(k, tol);
  return k;
}

std::vector<Vec> barycentric_grid(const std::vector<Vec>& sigma, std::size_t k) {
  if (sigma.empty()) throw Error("grid over an empty simplex");
  if (k == 0) k = 1;
  const std::size_t n = sigma.size();
  std::vector<Vec> out;
  std::vector<std::size_t> w(n, 0);
  // All weight vectors of n nonnegative integers summing to k, lexicographically.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == n) {
      w[i] = left;
      Vec x = Vec::Zero(sigma[0].size());
      for (std::size_t j = 0; j < n; ++j) x += (static_cast<double>(w[j]) / static_cast<double>(k)) * sigma[j];
      out.push_back(std::move(x));
      return;
    }
    for (std::size_t a = 0; a <= left; ++a) {
      w[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, k);
  return out;
}

Agreement prestars_in_agreement(const PointCloud& cloud, const Simplex& sigma, double rho, const ManifoldModel& model,
                                std::size_t grid_k, const Tolerance& tol) {
  Agreement out;
  const auto pts = gather(cloud, sigma);
  out.anchors = barycentric_grid(pts, grid_k);
  out.anchors.push_back(smallest_enclosing_ball(pts, tol).center);
  for (const auto& x : out.anchors) out.membership.push_back(in_prestar(cloud, sigma, rho, model, x, tol));
  for (std::size_t i = 1; i < out.membership.size(); ++i)
    if (out.membership[i] != out.membership[0]) {
      out.agree = false;
      out.witness = std::make_pair(std::size_t{0}, i);
      break;
    }
  return out;
}

bool in_projected_hull(const ManifoldModel& model, const std::vector<Vec>& sigma, const Vec& m, const Tolerance& tol) {
  if (sigma.empty()) return false;
  const AffineFlat t = model.tangent(m);
  const auto proj = project_coords(t, sigma);
  const Vec mc = t.coords(m);
  const double scale = std::max(diameter(proj), 1e-300);
  if (sigma.size() > 1 && is_degenerate(proj, tol)) return false;
  const Barycentric bc = barycentric(proj, mc);
  if (bc.residual > tol.ortho * scale) return false;
  if (bc.lambda.minCoeff() < -tol.hull) return false;
  Vec x = Vec::Zero(m.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) x += bc.lambda[static_cast<Eigen::Index>(i)] * sigma[i];
  try {
    return (model.project(x) - m).norm() <= tol.ortho * std::max(1.0, m.norm());
  } catch (const ProjectionUndefined&) {
    return false;
  }
}

bool in_projected_hull_grid(const ManifoldModel& model, const std::vector<Vec>& sigma, const Vec& m, std::size_t grid_k) {
  const double thr = diameter(sigma) / (4.0 * static_cast<double>(std::max<std::size_t>(grid_k, 1)));
  for (const auto& x : barycentric_grid(sigma, grid_k)) {
    try {
      if ((model.project(x) - m).norm() <= thr) return true;
    } catch (const ProjectionUndefined&) {
    }
  }
  return false;
}

SimplexSet covering_simplices(const FlatDelComplex& k, const Vec& m, const Tolerance& tol) {
  SimplexSet out;
  if (!k.model) throw Error("covering test needs a manifold model");
  // Every vertex of a covering rho-small simplex lies within 2 rho + rho of m.
  const std::vector<Index> near = simd::ball_query(k.points, m, 4.0 * k.rho);
  std::vector<char> mark(k.points.size(), 0);
  for (Index i : near) mark[i] = 1;
  for (const auto& s : k.simplices) {
    bool all = true;
    for (Index v : s) all = all && mark[v];
    if (all && in_projected_hull(*k.model, gather(k.points, s), m, tol)) out.insert(s);
  }
  return out;
}

}  // namespace flatdel

#include "flatdel/delaunay.hpp"

#include "flatdel/lp.hpp"
#include "flatdel/simd.hpp"

#include <algorithm>
#include <cmath>

namespace flatdel {

Vec FlatPointSet::coords(std::size_t local) const {
  Vec c(static_cast<Eigen::Index>(dim()));
  for (std::size_t k = 0; k < dim(); ++k) c[static_cast<Eigen::Index>(k)] = cols[k][local];
  return c;
}

std::optional<std::size_t> FlatPointSet::local_index(Index src) const {
  auto it = std::lower_bound(source.begin(), source.end(), src);
  if (it == source.end() || *it != src) return std::nullopt;
  return static_cast<std::size_t>(it - source.begin());
}

std::vector<const double*> FlatPointSet::columns() const {
  std::vector<const double*> out;
  for (const auto& c : cols) out.push_back(c.data());
  return out;
}

double FlatPointSet::scale() const {
  double s2 = 0.0;
  for (const auto& c : cols) {
    if (c.empty()) continue;
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    s2 += (*hi - *lo) * (*hi - *lo);
  }
  return std::max(std::sqrt(s2), 1e-300);
}

FlatPointSet make_flat_point_set(const PointCloud& cloud, std::vector<Index> indices, const AffineFlat& flat) {
  if (flat.ambient_dim() != cloud.dim()) throw DimensionMismatch("flat and cloud live in different spaces");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  FlatPointSet fps;
  fps.flat = flat;
  fps.source = std::move(indices);
  fps.cols.assign(flat.dim(), std::vector<double>(fps.source.size()));
  const std::size_t n_amb = cloud.dim();
  Vec x(static_cast<Eigen::Index>(n_amb));
  for (std::size_t i = 0; i < fps.source.size(); ++i) {
    for (std::size_t k = 0; k < n_amb; ++k) x[static_cast<Eigen::Index>(k)] = cloud.coord(fps.source[i], k);
    const Vec c = flat.coords(x);
    for (std::size_t k = 0; k < flat.dim(); ++k) fps.cols[k][i] = c[static_cast<Eigen::Index>(k)];
  }
  return fps;
}

FlatPointSet make_flat_point_set(const AffineFlat& flat, const std::vector<Vec>& coords, std::vector<Index> source) {
  if (source.empty())
    for (std::size_t i = 0; i < coords.size(); ++i) source.push_back(static_cast<Index>(i));
  if (source.size() != coords.size()) throw Error("source index list has wrong length");
  if (!std::is_sorted(source.begin(), source.end())) throw Error("source indices must be sorted");
  FlatPointSet fps;
  fps.flat = flat;
  fps.source = std::move(source);
  fps.cols.assign(flat.dim(), std::vector<double>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (static_cast<std::size_t>(coords[i].size()) != flat.dim()) throw DimensionMismatch("flat coordinates have wrong size");
    for (std::size_t k = 0; k < flat.dim(); ++k) fps.cols[k][i] = coords[i][static_cast<Eigen::Index>(k)];
  }
  return fps;
}

namespace {

// Circumsphere of d+1 local points in d flat coordinates. False when degenerate,
// i.e. height <= tol.degenerate * set_scale.
bool local_circumsphere(const FlatPointSet& fps, const std::size_t* idx, double set_scale, const Tolerance& tol,
                        Vec& center, double& radius) {
  const std::size_t d = fps.dim();
  const double floor = tol.degenerate * set_scale;
  if (d == 1) {
    const double a = fps.cols[0][idx[0]], b = fps.cols[0][idx[1]];
    if (std::abs(b - a) <= floor) return false;
    center.resize(1);
    center[0] = 0.5 * (a + b);
    radius = 0.5 * std::abs(b - a);
    return true;
  }
  if (d == 2) {
    const double ax = fps.cols[0][idx[0]], ay = fps.cols[1][idx[0]];
    const double bx = fps.cols[0][idx[1]] - ax, by = fps.cols[1][idx[1]] - ay;
    const double cx = fps.cols[0][idx[2]] - ax, cy = fps.cols[1][idx[2]] - ay;
    const double cross = bx * cy - by * cx;
    const double lb = bx * bx + by * by, lc = cx * cx + cy * cy;
    const double la = (cx - bx) * (cx - bx) + (cy - by) * (cy - by);
    const double lmax = std::sqrt(std::max({la, lb, lc}));
    if (lmax == 0.0 || std::abs(cross) / lmax <= floor) return false;
    const double den = 2.0 * cross;
    const double ux = (cy * lb - by * lc) / den;
    const double uy = (bx * lc - cx * lb) / den;
    center.resize(2);
    center[0] = ax + ux;
    center[1] = ay + uy;
    radius = std::sqrt(ux * ux + uy * uy);
    return true;
  }
  std::vector<Vec> pts;
  for (std::size_t i = 0; i <= d; ++i) pts.push_back(fps.coords(idx[i]));
  if (height(pts, tol) <= floor) return false;
  const Sphere s = min_circumsphere(pts, Tolerance{tol.ortho, tol.sphere, tol.angle, 0.0, tol.insphere, tol.hull, tol.embed});
  center = s.center;
  radius = s.radius;
  return true;
}

// Visits all k-subsets of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n || k == 0) return;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    f(c.data());
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

std::size_t affine_rank(const FlatPointSet& fps, const Tolerance& tol) {
  if (fps.size() <= 1) return 0;
  Mat dirs(static_cast<Eigen::Index>(fps.dim()), static_cast<Eigen::Index>(fps.size() - 1));
  const Vec base = fps.coords(0);
  for (std::size_t i = 1; i < fps.size(); ++i) dirs.col(static_cast<Eigen::Index>(i - 1)) = fps.coords(i) - base;
  return AffineFlat::from_directions(base, dirs, tol.degenerate).dim();
}

Simplex lift(const FlatPointSet& fps, const std::size_t* idx, std::size_t k) {
  std::vector<Index> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = fps.source[idx[i]];
  return Simplex(std::move(v));
}

}  // namespace

EmptySphere empty_sphere(const std::vector<Vec>& sigma, const std::vector<Vec>& others, const Tolerance& tol) {
  if (sigma.empty()) throw Error("empty simplex");
  const Eigen::Index dim = sigma[0].size();
  double scale = 0.0;
  for (const auto& p : sigma) scale = std::max(scale, (p - sigma[0]).norm());
  for (const auto& q : others) scale = std::max(scale, (q - sigma[0]).norm());
  if (scale == 0.0) scale = 1.0;
  // Unknowns: c = u - w (2*dim), t = t1 - t2. Shifted so sigma[0] is the origin, scaled to unit size.
  const Eigen::Index nv = 2 * dim + 2;
  const Eigen::Index n_eq = static_cast<Eigen::Index>(sigma.size()) - 1;
  const Eigen::Index n_in = static_cast<Eigen::Index>(others.size());
  Mat a = Mat::Zero(n_eq + n_in + 1, nv);
  Vec b = Vec::Zero(a.rows());
  std::vector<lp::Relation> rel;
  Eigen::Index row = 0;
  for (std::size_t i = 1; i < sigma.size(); ++i, ++row) {
    const Vec v = (sigma[i] - sigma[0]) / scale;
    a.block(row, 0, 1, dim) = 2.0 * v.transpose();
    a.block(row, dim, 1, dim) = -2.0 * v.transpose();
    b[row] = v.squaredNorm();
    rel.push_back(lp::Relation::eq);
  }
  for (const auto& qa : others) {
    const Vec q = (qa - sigma[0]) / scale;
    a.block(row, 0, 1, dim) = 2.0 * q.transpose();
    a.block(row, dim, 1, dim) = -2.0 * q.transpose();
    a(row, 2 * dim) = 1.0;
    a(row, 2 * dim + 1) = -1.0;
    b[row] = q.squaredNorm();
    rel.push_back(lp::Relation::le);
    ++row;
  }
  a(row, 2 * dim) = 1.0;
  a(row, 2 * dim + 1) = -1.0;
  b[row] = 1.0;
  rel.push_back(lp::Relation::le);
  Vec c = Vec::Zero(nv);
  c[2 * dim] = 1.0;
  c[2 * dim + 1] = -1.0;
  const lp::Result res = lp::maximize(c, a, rel, b);
  EmptySphere out;
  if (res.status != lp::Status::optimal) return out;  // sigma affinely dependent: no sphere through it
  out.margin = res.value;
  out.center = sigma[0] + scale * (res.x.head(dim) - res.x.segment(dim, dim));
  out.admits = others.empty() || res.value >= -2.0 * tol.insphere;
  return out;
}

EmptySphere empty_sphere(const PointCloud& cloud, const Simplex& sigma, const Tolerance& tol) {
  const std::vector<Vec> pts = gather(cloud, sigma);
  const Sphere s = min_circumsphere(pts, tol);
  // Seed the cut set with nearby points, then add any point that invades the returned sphere.
  std::vector<Index> near = simd::ball_query(cloud, s.center, 3.0 * s.radius);
  std::set<Index> active;
  for (Index i : near)
    if (!sigma.contains(i)) active.insert(i);
  for (int round = 0; round < 64; ++round) {
    std::vector<Vec> others;
    for (Index i : active) others.push_back(cloud.point(i));
    EmptySphere e = empty_sphere(pts, others, tol);
    if (!e.admits) return e;
    const double r = (e.center - pts[0]).norm();
    std::vector<Index> inside = simd::ball_query(cloud, e.center, r * (1.0 - tol.insphere));
    bool added = false;
    for (Index i : inside)
      if (!sigma.contains(i) && active.insert(i).second) added = true;
    if (!added) return e;
  }
  throw Error("empty-sphere cutting planes did not converge");
}

DelaunayComplex delaunay_complex(const FlatPointSet& fps, const Tolerance& tol) {
  DelaunayComplex out;
  const std::size_t n = fps.size();
  const std::size_t d = fps.dim();
  if (d == 0) throw DimensionMismatch("Delaunay complex needs a flat of dimension at least 1");
  if (n == 0) return out;
  for (Index s : fps.source) out.simplices.insert(Simplex{s});
  if (n == 1) return out;
  const double set_scale = fps.scale();
  const auto cols = fps.columns();
  const auto& kern = simd::kernels();
  const std::size_t rank = affine_rank(fps, tol);

  if (rank == d) {
    std::vector<double> gaps(n);
    for_each_subset(n, d + 1, [&](const std::size_t* idx) {
      Vec center;
      double r = 0.0;
      if (!local_circumsphere(fps, idx, set_scale, tol, center, r)) return;
      const double r_in = r * (1.0 - tol.insphere);
      if (kern.count_inside(cols.data(), d, n, center.data(), r_in * r_in) != 0) return;
      const Simplex sigma = lift(fps, idx, d + 1);
      for (auto& f : sigma.faces()) out.simplices.insert(std::move(f));
      kern.sphere_gaps(cols.data(), d, n, center.data(), r, gaps.data());
      std::vector<Index> group(sigma.begin(), sigma.end());
      for (std::size_t j = 0; j < n; ++j)
        if (gaps[j] <= tol.insphere * r && !sigma.contains(fps.source[j])) group.push_back(fps.source[j]);
      if (group.size() > d + 1) {
        std::sort(group.begin(), group.end());
        out.degeneracy.cospherical.insert(group);
      }
    });
    return out;
  }

  // The points span only a rank-dimensional subspace: test each candidate simplex directly.
  out.used_direct_test = true;
  std::vector<Vec> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = fps.coords(i);
  for (std::size_t k = 2; k <= rank + 1; ++k) {
    for_each_subset(n, k, [&](const std::size_t* idx) {
      std::vector<Vec> sig;
      std::vector<bool> in(n, false);
      for (std::size_t i = 0; i < k; ++i) {
        sig.push_back(all[idx[i]]);
        in[idx[i]] = true;
      }
      if (height(sig, tol) <= tol.degenerate * set_scale) return;
      std::vector<Vec> others;
      for (std::size_t j = 0; j < n; ++j)
        if (!in[j]) others.push_back(all[j]);
      if (empty_sphere(sig, others, tol).admits) out.simplices.insert(lift(fps, idx, k));
    });
  }
  // A top simplex of the spanned subspace lying on one sphere with extra points is a degeneracy too.
  if (rank >= 1) {
    for (const auto& s : out.simplices) {
      if (s.size() != rank + 1) continue;
      std::vector<Vec> sig;
      for (Index v : s) sig.push_back(all[*fps.local_index(v)]);
      const Sphere sp = min_circumsphere(sig, Tolerance{tol.ortho, tol.sphere, tol.angle, 0.0, tol.insphere, tol.hull, tol.embed});
      std::vector<Index> group(s.begin(), s.end());
      for (std::size_t j = 0; j < n; ++j)
        if (!s.contains(fps.source[j]) && std::abs((all[j] - sp.center).norm() - sp.radius) <= tol.insphere * sp.radius)
          group.push_back(fps.source[j]);
      if (group.size() > rank + 1) {
        std::sort(group.begin(), group.end());
        out.degeneracy.cospherical.insert(group);
      }
    }
  }
  return out;
}

StarResult star_in_flat(const FlatPointSet& fps, const DelaunayComplex& del, const Vec& m, const Tolerance& tol) {
  StarResult out;
  out.degeneracy = del.degeneracy;
  if (fps.size() == 0) return out;
  const double scale = fps.scale();
  if (fps.flat.distance(m) > tol.ortho * std::max(1.0, m.norm()) + tol.ortho * scale)
    throw Error("star anchor does not lie in the flat");
  const Vec mc = fps.flat.coords(m);
  for (const auto& s : del.simplices) {
    std::vector<Vec> pts;
    pts.reserve(s.size());
    for (Index v : s) pts.push_back(fps.coords(*fps.local_index(v)));
    const Barycentric bc = barycentric(pts, mc);
    if (bc.residual > tol.ortho * scale) continue;
    const double lo = bc.lambda.minCoeff();
    if (lo < -tol.hull) continue;
    out.simplices.insert(s);
    if (s.size() > 1 && lo <= tol.hull && bc.lambda.maxCoeff() < 1.0 - tol.hull) out.boundary_hits.push_back(s);
  }
  return out;
}

StarResult star_in_flat(const FlatPointSet& fps, const Vec& m, const Tolerance& tol) {
  return star_in_flat(fps, delaunay_complex(fps, tol), m, tol);
}

double protection_of(const FlatPointSet& fps, const Simplex& sigma, const std::vector<Index>& candidates,
                     const Tolerance& tol) {
  std::vector<Vec> pts;
  for (Index v : sigma) {
    auto li = fps.local_index(v);
    if (!li) throw Error("simplex vertex not in the flat point set");
    pts.push_back(fps.coords(*li));
  }
  const Sphere s = min_circumsphere(pts, tol);
  double best = kInf;
  for (Index q : candidates) {
    if (sigma.contains(q)) continue;
    auto li = fps.local_index(q);
    if (!li) throw Error("candidate not in the flat point set");
    best = std::min(best, std::abs((fps.coords(*li) - s.center).norm() - s.radius));
  }
  return best;
}

bool is_delaunay_in_flat(const FlatPointSet& fps, const Simplex& sigma, const Tolerance& tol, bool* degenerate) {
  const std::size_t d = fps.dim();
  if (degenerate) *degenerate = false;
  if (sigma.size() != d + 1) throw Error("membership test expects a top-dimensional simplex");
  std::vector<std::size_t> idx;
  for (Index v : sigma) {
    auto li = fps.local_index(v);
    if (!li) return false;
    idx.push_back(*li);
  }
  Vec center;
  double r = 0.0;
  if (!local_circumsphere(fps, idx.data(), fps.scale(), tol, center, r)) {
    if (degenerate) *degenerate = true;
    return false;
  }
  const auto cols = fps.columns();
  const double r_in = r * (1.0 - tol.insphere);
  return simd::kernels().count_inside(cols.data(), d, fps.size(), center.data(), r_in * r_in) == 0;
}

bool is_gabriel(const PointCloud& cloud, const Simplex& sigma, const Tolerance& tol) {
  const Sphere s = min_circumsphere(cloud, sigma, tol);
  const auto cols = cloud.columns();
  const double r_in = s.radius * (1.0 - tol.insphere);
  return simd::kernels().count_inside(cols.data(), cloud.dim(), cloud.size(), s.center.data(), r_in * r_in) == 0;
}

}  // namespace flatdel

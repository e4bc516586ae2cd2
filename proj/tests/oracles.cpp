#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat edge_matrix(const std::vector<Vec>& s) {
  Mat a(s[0].size(), static_cast<Eigen::Index>(s.size()) - 1);
  for (std::size_t i = 1; i < s.size(); ++i) a.col(static_cast<Eigen::Index>(i) - 1) = s[i] - s[0];
  return a;
}

double orient(const Vec& a, const Vec& b, const Vec& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void subsets(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Complex delaunay_1d(const std::vector<double>& x) {
  Complex out;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) out.insert({static_cast<Index>(i)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double lo = std::min(x[i], x[j]), hi = std::max(x[i], x[j]);
      bool empty = true;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && x[k] > lo && x[k] < hi) empty = false;
      if (empty) out.insert({static_cast<Index>(i), static_cast<Index>(j)});
    }
  return out;
}

Complex delaunay_2d(const std::vector<Vec>& p, double rel_tol) {
  Complex out;
  const std::size_t n = p.size();
  if (n == 0) return out;
  Vec lo = p[0], hi = p[0];
  for (const auto& q : p) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  const double scale = std::max((hi - lo).norm(), 1e-300);
  for (std::size_t i = 0; i < n; ++i) out.insert({static_cast<Index>(i)});

  // Circles through a and b have centers mid + t n; q stays outside iff 2 t <w,n> <= |w|^2 - h^2.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec mid = (p[i] + p[j]) / 2;
      const Vec e = p[j] - p[i];
      const double half2 = e.squaredNorm() / 4;
      Vec nrm(2);
      nrm << -e[1], e[0];
      nrm.normalize();
      double tlo = -kInf, thi = kInf;
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) {
        if (k == i || k == j) continue;
        const Vec w = p[k] - mid;
        const double rhs = w.squaredNorm() - half2;
        const double coef = 2 * w.dot(nrm);
        if (std::abs(coef) <= 1e-12 * scale) {
          if (rhs < -rel_tol * scale * scale) ok = false;
        } else if (coef > 0) {
          thi = std::min(thi, rhs / coef);
        } else {
          tlo = std::max(tlo, rhs / coef);
        }
      }
      if (ok && tlo <= thi + rel_tol * scale) out.insert({static_cast<Index>(i), static_cast<Index>(j)});
    }

  subsets(n, 3, [&](const std::vector<std::size_t>& t) {
    const Vec &a = p[t[0]], &b = p[t[1]], &c = p[t[2]];
    if (std::abs(orient(a, b, c)) <= 1e-12 * scale * scale) return;
    const Vec z = circumcenter({a, b, c});
    const double r = (a - z).norm();
    const double r_in = r * (1 - rel_tol);
    for (std::size_t k = 0; k < n; ++k)
      if ((p[k] - z).squaredNorm() < r_in * r_in) return;
    out.insert({static_cast<Index>(t[0]), static_cast<Index>(t[1]), static_cast<Index>(t[2])});
  });
  return out;
}

Vec circumcenter(const std::vector<Vec>& s) {
  if (s.size() == 1) return s[0];
  const Mat a = edge_matrix(s);
  const Mat g = a.transpose() * a;
  const Vec rhs = g.diagonal() / 2;
  const Vec lambda = g.fullPivLu().solve(rhs);
  return s[0] + a * lambda;
}

double distance_to_affine_hull(const std::vector<Vec>& s, const Vec& x) {
  if (s.size() == 1) return (x - s[0]).norm();
  const Mat a = edge_matrix(s);
  const Vec rel = x - s[0];
  const Vec coef = a.colPivHouseholderQr().solve(rel);
  return (rel - a * coef).norm();
}

double height(const std::vector<Vec>& s) {
  if (s.size() < 2) return kInf;
  double h = kInf;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<Vec> facet;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i) facet.push_back(s[j]);
    h = std::min(h, distance_to_affine_hull(facet, s[i]));
  }
  return h;
}

Ball seb_brute_force(const std::vector<Vec>& p) {
  Ball best{p[0], kInf};
  const std::size_t dim = static_cast<std::size_t>(p[0].size());
  double scale = 0;
  for (const auto& q : p) scale = std::max(scale, (q - p[0]).norm());
  for (std::size_t k = 1; k <= std::min(p.size(), dim + 1); ++k) {
    subsets(p.size(), k, [&](const std::vector<std::size_t>& idx) {
      std::vector<Vec> s;
      for (auto i : idx) s.push_back(p[i]);
      if (k > 1) {
        Eigen::ColPivHouseholderQR<Mat> qr(edge_matrix(s));
        qr.setThreshold(1e-10);
        if (static_cast<std::size_t>(qr.rank()) != k - 1) return;
      }
      const Vec c = circumcenter(s);
      const double r = (s[0] - c).norm();
      if (r >= best.radius) return;
      for (const auto& q : p)
        if ((q - c).norm() > r + 1e-12 * std::max(scale, 1.0)) return;
      best = {c, r};
    });
  }
  return best;
}

Mat orthonormalize(const Mat& m) {
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(1e-12);
  const Mat q = qr.householderQ() * Mat::Identity(m.rows(), m.cols());
  return q.leftCols(qr.rank());
}

Mat direction_basis(const std::vector<Vec>& s) { return orthonormalize(edge_matrix(s)); }

double max_angle(const Mat& a, const Mat& b) {
  const Mat r = a - b * (b.transpose() * a);
  Eigen::JacobiSVD<Mat> svd(r);
  const double s = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  return std::asin(std::min(1.0, s));
}

Vec random_gaussian(std::size_t n, flatdel::Rng& rng) {
  Vec v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = rng.normal();
  return v;
}

Mat random_gaussian(std::size_t rows, std::size_t cols, flatdel::Rng& rng) {
  Mat g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) = random_gaussian(rows, rng);
  return g;
}

Mat random_rotation(std::size_t n, flatdel::Rng& rng) {
  const Mat g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Vec sphere_normal(const Vec& p) { return p.normalized(); }

Vec torus_normal(const Vec& p, double major) {
  Vec ring = Vec::Zero(3);
  const double rxy = std::hypot(p[0], p[1]);
  ring[0] = major * p[0] / rxy;
  ring[1] = major * p[1] / rxy;
  return (p - ring).normalized();
}

Vec torus_point(double u, double v, double major, double minor) {
  Vec p(3);
  p << (major + minor * std::cos(v)) * std::cos(u), (major + minor * std::cos(v)) * std::sin(u),
      minor * std::sin(v);
  return p;
}

double max_almost_circumcenter_offset(const std::vector<Vec>& s, double xi2) {
  const Mat b = direction_basis(s);
  const auto k = static_cast<std::size_t>(b.cols());
  std::vector<Vec> g;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) g.push_back(2 * b.transpose() * (s[j] - s[i]));
  double best = 0;
  subsets(g.size(), k, [&](const std::vector<std::size_t>& idx) {
    Mat m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < k; ++r) m.row(static_cast<Eigen::Index>(r)) = g[idx[r]].transpose();
    Eigen::FullPivLU<Mat> lu(m);
    if (!lu.isInvertible()) return;
    for (std::size_t signs = 0; signs < (std::size_t{1} << k); ++signs) {
      Vec rhs(static_cast<Eigen::Index>(k));
      for (std::size_t r = 0; r < k; ++r) rhs[static_cast<Eigen::Index>(r)] = (signs >> r & 1) ? xi2 : -xi2;
      const Vec y = lu.solve(rhs);
      bool feasible = true;
      for (const auto& gi : g)
        if (std::abs(gi.dot(y)) > xi2 * (1 + 1e-9)) feasible = false;
      if (feasible) best = std::max(best, y.norm());
    }
  });
  return best;
}

bool segments_cross(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace oracle

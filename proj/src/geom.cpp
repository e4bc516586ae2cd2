#include "flatdel/geom.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <numbers>

namespace flatdel {

namespace {

void check_dim(const AffineFlat& h, const Vec& x) {
  if (x.size() != h.base.size()) throw DimensionMismatch("point and flat live in different spaces");
}

double largest_singular(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double smallest_singular(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

}  // namespace

Vec AffineFlat::project(const Vec& x) const {
  check_dim(*this, x);
  if (dim() == 0) return base;
  return base + basis * (basis.transpose() * (x - base));
}

Vec AffineFlat::coords(const Vec& x) const {
  check_dim(*this, x);
  return basis.transpose() * (x - base);
}

Vec AffineFlat::lift(const Vec& c) const {
  if (static_cast<std::size_t>(c.size()) != dim()) throw DimensionMismatch("flat coordinates have wrong size");
  if (dim() == 0) return base;
  return base + basis * c;
}

double AffineFlat::distance(const Vec& x) const { return (x - project(x)).norm(); }

AffineFlat AffineFlat::from_directions(const Vec& base, const Mat& directions, double drop_tol) {
  AffineFlat h;
  h.base = base;
  const Eigen::Index n = base.size();
  if (directions.rows() != n && directions.cols() > 0)
    throw DimensionMismatch("direction vectors have wrong dimension");
  double scale = 0.0;
  for (Eigen::Index j = 0; j < directions.cols(); ++j) scale = std::max(scale, directions.col(j).norm());
  Mat q(n, 0);
  for (Eigen::Index j = 0; j < directions.cols(); ++j) {
    Vec v = directions.col(j);
    // Two passes of modified Gram-Schmidt keep the basis orthonormal to rounding.
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < q.cols(); ++i) v -= q.col(i).dot(v) * q.col(i);
    const double nv = v.norm();
    if (nv <= drop_tol * scale || nv == 0.0) continue;
    q.conservativeResize(n, q.cols() + 1);
    q.col(q.cols() - 1) = v / nv;
  }
  h.basis = q;
  return h;
}

AffineFlat AffineFlat::through(const std::vector<Vec>& points, const Tolerance& tol) {
  if (points.empty()) throw Error("affine hull of an empty set");
  Mat dirs(points[0].size(), static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t i = 1; i < points.size(); ++i) dirs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points[0];
  return from_directions(points[0], dirs, tol.degenerate);
}

Vec project_to_flat(const AffineFlat& h, const Vec& x) { return h.project(x); }

double angle_between_flats(const AffineFlat& h0, const AffineFlat& h1) {
  if (h0.ambient_dim() != h1.ambient_dim()) throw DimensionMismatch("flats live in different spaces");
  const AffineFlat& small = h0.dim() <= h1.dim() ? h0 : h1;
  const AffineFlat& large = h0.dim() <= h1.dim() ? h1 : h0;
  if (small.dim() == 0) return 0.0;
  const Mat cross = large.basis.transpose() * small.basis;  // d1 x d0
  const double c = std::min(1.0, smallest_singular(cross));
  const Mat residual = small.basis - large.basis * cross;
  const double s = std::min(1.0, largest_singular(residual));
  // atan2 of (sin, cos) keeps full precision near 0 and near pi/2.
  return std::atan2(s, c);
}

double angle_line_to_flat(const Vec& a, const Vec& b, const AffineFlat& h, const Tolerance& tol) {
  check_dim(h, a);
  check_dim(h, b);
  const Vec u = b - a;
  const double len = u.norm();
  if (len == 0.0 || len <= tol.degenerate * std::max(a.norm(), b.norm()))
    throw DegenerateSimplex("line through coincident points");
  if (h.dim() == 0) return std::numbers::pi / 2;
  const Vec along = h.basis.transpose() * u;
  const double c = along.norm() / len;
  const double s = (u - h.basis * along).norm() / len;
  return std::atan2(s, c);
}

double diameter(const std::vector<Vec>& points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, (points[i] - points[j]).norm());
  return d;
}

double height(const std::vector<Vec>& points, const Tolerance& tol) {
  if (points.size() < 2) return kInf;
  double h = kInf;
  for (std::size_t v = 0; v < points.size(); ++v) {
    std::vector<Vec> rest;
    rest.reserve(points.size() - 1);
    for (std::size_t i = 0; i < points.size(); ++i)
      if (i != v) rest.push_back(points[i]);
    h = std::min(h, AffineFlat::through(rest, tol).distance(points[v]));
  }
  return h;
}

double height(const PointCloud& cloud, const Simplex& s, const Tolerance& tol) {
  return height(gather(cloud, s), tol);
}

bool is_degenerate(const std::vector<Vec>& points, const Tolerance& tol) {
  if (points.size() < 2) return false;
  const double scale = diameter(points);
  return scale == 0.0 || height(points, tol) <= tol.degenerate * scale;
}

namespace {

// Circumcenter inside the affine hull; assumes affine independence.
Sphere circumsphere_raw(const std::vector<Vec>& pts) {
  Sphere s;
  if (pts.size() == 1) {
    s.center = pts[0];
    return s;
  }
  const Eigen::Index k = static_cast<Eigen::Index>(pts.size() - 1);
  Mat d(pts[0].size(), k);
  for (Eigen::Index i = 0; i < k; ++i) d.col(i) = pts[static_cast<std::size_t>(i + 1)] - pts[0];
  const Mat g = d.transpose() * d;
  const Vec rhs = 0.5 * g.diagonal();
  const Vec lambda = g.completeOrthogonalDecomposition().solve(rhs);
  s.center = pts[0] + d * lambda;
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, (p - s.center).norm());
  s.radius = r;
  return s;
}

}  // namespace

Sphere min_circumsphere(const std::vector<Vec>& points, const Tolerance& tol) {
  if (points.empty()) throw Error("circumsphere of an empty set");
  if (is_degenerate(points, tol)) throw DegenerateSimplex("degenerate simplex has no unique circumsphere");
  return circumsphere_raw(points);
}

Sphere min_circumsphere(const PointCloud& cloud, const Simplex& s, const Tolerance& tol) {
  return min_circumsphere(gather(cloud, s), tol);
}

namespace {

class MoveToFront {
 public:
  MoveToFront(const std::vector<Vec>& pts, const Tolerance& tol) : pts_(pts), tol_(tol) {
    for (std::size_t i = 0; i < pts.size(); ++i) order_.push_back(static_cast<int>(i));
    max_support_ = static_cast<std::size_t>(pts[0].size()) + 1;
  }

  Ball run() { return solve(order_.end()); }

 private:
  bool inside(const Ball& b, const Vec& p) const {
    if (b.radius < 0.0) return false;
    return (p - b.center).norm() <= b.radius * (1.0 + tol_.sphere);
  }

  Ball support_ball() const {
    Ball b;
    if (support_.empty()) {
      b.center = Vec::Zero(pts_[0].size());
      b.radius = -1.0;
      return b;
    }
    std::vector<Vec> s;
    for (int i : support_) s.push_back(pts_[static_cast<std::size_t>(i)]);
    const Sphere sp = circumsphere_raw(s);
    b.center = sp.center;
    b.radius = sp.radius;
    return b;
  }

  Ball solve(std::list<int>::iterator end) {
    Ball b = support_ball();
    if (support_.size() == max_support_) return b;
    for (auto it = order_.begin(); it != end;) {
      auto cur = it++;
      if (!inside(b, pts_[static_cast<std::size_t>(*cur)])) {
        support_.push_back(*cur);
        b = solve(cur);
        support_.pop_back();
        if (cur != order_.begin()) order_.splice(order_.begin(), order_, cur);
      }
    }
    return b;
  }

  const std::vector<Vec>& pts_;
  Tolerance tol_;
  std::list<int> order_;
  std::vector<int> support_;
  std::size_t max_support_ = 1;
};

}  // namespace

Ball smallest_enclosing_ball(const std::vector<Vec>& points, const Tolerance& tol) {
  if (points.empty()) throw Error("smallest enclosing ball of an empty set");
  Ball b;
  if (points.size() == 1) {
    b.center = points[0];
    return b;
  }
  if (points.size() == 2) {
    b.center = 0.5 * (points[0] + points[1]);
    b.radius = 0.5 * (points[0] - points[1]).norm();
    return b;
  }
  if (points.size() == 3) {
    // A non-acute triangle is enclosed by the ball on its longest edge.
    for (int v = 0; v < 3; ++v) {
      const Vec& a = points[static_cast<std::size_t>(v)];
      const Vec& p = points[static_cast<std::size_t>((v + 1) % 3)];
      const Vec& q = points[static_cast<std::size_t>((v + 2) % 3)];
      if ((p - a).dot(q - a) <= 0.0) {
        b.center = 0.5 * (p + q);
        b.radius = 0.5 * (p - q).norm();
        return b;
      }
    }
    const Sphere s = circumsphere_raw(points);
    b.center = s.center;
    b.radius = s.radius;
    return b;
  }
  return MoveToFront(points, tol).run();
}

Ball smallest_enclosing_ball(const PointCloud& cloud, const Simplex& s, const Tolerance& tol) {
  return smallest_enclosing_ball(gather(cloud, s), tol);
}

bool is_rho_small(const PointCloud& cloud, const Simplex& s, double rho, const Tolerance& tol) {
  if (s.size() == 1) return rho >= 0.0;
  return smallest_enclosing_ball(cloud, s, tol).radius <= rho * (1.0 + tol.sphere);
}

Barycentric barycentric(const std::vector<Vec>& simplex, const Vec& x) {
  Barycentric out;
  const std::size_t n = simplex.size();
  if (n == 0) throw Error("barycentric coordinates need at least one vertex");
  out.lambda = Vec::Zero(static_cast<Eigen::Index>(n));
  if (n == 1) {
    out.lambda[0] = 1.0;
    out.residual = (x - simplex[0]).norm();
    return out;
  }
  Mat d(x.size(), static_cast<Eigen::Index>(n - 1));
  for (std::size_t i = 1; i < n; ++i) d.col(static_cast<Eigen::Index>(i - 1)) = simplex[i] - simplex[0];
  const Vec rhs = x - simplex[0];
  const Vec mu = d.colPivHouseholderQr().solve(rhs);
  out.lambda[0] = 1.0 - mu.sum();
  out.lambda.tail(static_cast<Eigen::Index>(n - 1)) = mu;
  out.residual = (d * mu - rhs).norm();
  return out;
}

Vec closest_point_in_hull(const std::vector<Vec>& points, const Vec& x) {
  if (points.empty()) throw Error("hull of an empty set");
  const std::size_t n = points.size();
  Vec best = points[0];
  double best_d = kInf;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Vec> face;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) face.push_back(points[i]);
    if (is_degenerate(face)) continue;
    const Barycentric bc = barycentric(face, x);
    if (bc.lambda.minCoeff() < -1e-12) continue;
    Vec y = Vec::Zero(x.size());
    for (std::size_t i = 0; i < face.size(); ++i) y += bc.lambda[static_cast<Eigen::Index>(i)] * face[i];
    const double d = (y - x).norm();
    if (d < best_d) {
      best_d = d;
      best = y;
    }
  }
  return best;
}

double bound_federer(double dist_pq, double reach) {
  if (!(reach > 0.0)) throw OutOfRegime("reach must be positive");
  if (dist_pq < 0.0 || dist_pq >= reach) throw OutOfRegime("Federer bound needs ||p-q|| < R");
  return std::asin(dist_pq / (2.0 * reach));
}

double bound_tangent_variation(double dist_pq, double reach) {
  if (!(reach > 0.0)) throw OutOfRegime("reach must be positive");
  return 2.0 * std::asin(std::min(1.0, dist_pq / (2.0 * reach)));
}

CappedAngle bound_whitney(double t, int dim_sigma, double height_sigma) {
  if (t < 0.0) throw OutOfRegime("tube radius must be nonnegative");
  if (!(height_sigma > 0.0)) return {std::numbers::pi / 2, true};
  const double arg = 2.0 * t * dim_sigma / height_sigma;
  if (arg >= 1.0) return {std::numbers::pi / 2, true};
  return {std::asin(arg), false};
}

double bound_general_angle(int dim_sigma, double height_sigma, double rho, double delta, double reach) {
  if (!(16.0 * delta <= rho && rho <= reach / 3.0)) throw OutOfRegime("needs 16 delta <= rho <= R/3");
  if (!(height_sigma > 0.0)) throw OutOfRegime("degenerate simplex");
  const double arg = 2.0 * dim_sigma / height_sigma * (rho * rho / reach + delta);
  if (arg > 1.0) throw OutOfRegime("arcsin argument exceeds 1");
  return std::asin(arg);
}

double bound_theta_sigma(int dim_sigma, double height_sigma, double rho, double delta, double reach) {
  if (!(16.0 * delta <= rho && rho <= reach / 3.0)) throw OutOfRegime("needs 16 delta <= rho <= R/3");
  if (!(height_sigma > 0.0)) throw OutOfRegime("degenerate simplex");
  const double a1 = 2.0 * dim_sigma / height_sigma * (4.0 * rho * rho / reach + delta);
  const double a2 = (rho + delta) / reach;
  if (a1 > 1.0 || a2 > 1.0) throw OutOfRegime("arcsin argument exceeds 1");
  return std::asin(a1) + std::asin(a2);
}

double bound_seb_preimage(double seb_radius_projected, double angle) {
  if (!(angle < std::numbers::pi / 2)) throw OutOfRegime("angle must be below pi/2");
  return seb_radius_projected / std::cos(angle);
}

double bound_height_under_projection(double height_sigma, double angle) {
  if (!(angle < std::numbers::pi / 2)) throw OutOfRegime("angle must be below pi/2");
  return std::cos(angle) * height_sigma;
}

}  // namespace flatdel

#include "flatdel/manifold.hpp"

#include "flatdel/simd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

namespace flatdel {

namespace {

constexpr double kPi = std::numbers::pi;
// Points closer than this (relative to the model scale) to the medial axis are rejected.
constexpr double kMedialTol = 1e-12;

Vec zeros(std::size_t n) { return Vec::Zero(static_cast<Eigen::Index>(n)); }

void check_ambient(const Vec& x, std::size_t n) {
  if (static_cast<std::size_t>(x.size()) != n) throw DimensionMismatch("point has wrong ambient dimension");
}

std::size_t steps(double length, double spacing) {
  if (!(spacing > 0.0)) throw Error("witness spacing must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / spacing)));
}

class Circle final : public ManifoldModel {
 public:
  Circle(double r, std::size_t n) : r_(r), n_(n) {
    if (!(r > 0.0)) throw Error("circle radius must be positive");
    if (n < 2) throw DimensionMismatch("circle needs ambient dimension >= 2");
  }
  std::string name() const override { return "circle"; }
  std::size_t ambient_dim() const override { return n_; }
  std::size_t intrinsic_dim() const override { return 1; }
  double reach() const override { return r_; }
  Vec project(const Vec& x) const override {
    check_ambient(x, n_);
    const double len = std::hypot(x[0], x[1]);
    if (len <= kMedialTol * r_) throw ProjectionUndefined("point on the circle's center line");
    Vec m = zeros(n_);
    m[0] = r_ * x[0] / len;
    m[1] = r_ * x[1] / len;
    return m;
  }
  AffineFlat tangent(const Vec& m) const override {
    const Vec p = project(m);
    Mat b = Mat::Zero(static_cast<Eigen::Index>(n_), 1);
    b(0, 0) = -p[1] / r_;
    b(1, 0) = p[0] / r_;
    return AffineFlat{p, b};
  }
  Vec at(double t) const {
    Vec m = zeros(n_);
    m[0] = r_ * std::cos(t);
    m[1] = r_ * std::sin(t);
    return m;
  }
  Vec random_surface_point(Rng& rng) const override { return at(rng.uniform(0.0, 2.0 * kPi)); }
  std::vector<Vec> witness_grid(double spacing) const override {
    // Arc from any point to the nearest witness is at most pi r / n.
    const std::size_t n = steps(kPi * r_, spacing);
    return lattice(n);
  }
  std::vector<Vec> lattice(std::size_t n) const override {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)));
    return out;
  }
  double measure() const override { return 2.0 * kPi * r_; }
  int euler_characteristic() const override { return 0; }

 private:
  double r_;
  std::size_t n_;
};

class Sphere2 final : public ManifoldModel {
 public:
  Sphere2(double r, std::size_t d, std::size_t n) : r_(r), d_(d), n_(n) {
    if (!(r > 0.0)) throw Error("sphere radius must be positive");
    if (d < 1 || n < d + 1) throw DimensionMismatch("sphere needs ambient dimension >= d+1");
  }
  std::string name() const override { return "sphere"; }
  std::size_t ambient_dim() const override { return n_; }
  std::size_t intrinsic_dim() const override { return d_; }
  double reach() const override { return r_; }
  Vec project(const Vec& x) const override {
    check_ambient(x, n_);
    const double len = x.head(static_cast<Eigen::Index>(d_ + 1)).norm();
    if (len <= kMedialTol * r_) throw ProjectionUndefined("point at the sphere's center");
    Vec m = zeros(n_);
    m.head(static_cast<Eigen::Index>(d_ + 1)) = r_ * x.head(static_cast<Eigen::Index>(d_ + 1)) / len;
    return m;
  }
  AffineFlat tangent(const Vec& m) const override {
    const Vec p = project(m);
    const auto k = static_cast<Eigen::Index>(d_ + 1);
    // Orthonormal complement of the radial direction inside the first d+1 coordinates.
    Mat full = Mat::Identity(k, k);
    full.col(0) = p.head(k) / r_;
    Eigen::HouseholderQR<Mat> qr(full);
    const Mat q = qr.householderQ();
    Mat b = Mat::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(d_));
    b.topRows(k) = q.rightCols(static_cast<Eigen::Index>(d_));
    return AffineFlat{p, b};
  }
  Vec random_surface_point(Rng& rng) const override {
    Vec g = zeros(n_);
    do {
      for (std::size_t i = 0; i <= d_; ++i) g[static_cast<Eigen::Index>(i)] = rng.normal();
    } while (g.norm() < 1e-12);
    return r_ * g / g.norm();
  }
  std::vector<Vec> witness_grid(double spacing) const override {
    if (d_ == 1) return Circle(r_, n_).witness_grid(spacing);
    if (d_ != 2) throw Unsupported("witness grids are implemented for spheres of dimension <= 2");
    // Rings of latitude: a point reaches its ring along a meridian (<= spacing/2), then the
    // nearest ring point along the parallel (<= spacing/2).
    std::vector<Vec> out;
    const std::size_t rings = steps(kPi * r_, spacing);
    const double band = kPi / static_cast<double>(rings);
    for (std::size_t i = 0; i < rings; ++i) {
      const double th = (static_cast<double>(i) + 0.5) * band;
      const double lo = th - 0.5 * band, hi = th + 0.5 * band;
      const double widest = (lo <= kPi / 2 && hi >= kPi / 2) ? 1.0 : std::max(std::sin(lo), std::sin(hi));
      const std::size_t cols = steps(2.0 * kPi * r_ * widest, spacing);
      for (std::size_t j = 0; j < cols; ++j) {
        const double ph = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(cols);
        out.push_back(at(th, ph));
      }
    }
    return out;
  }
  std::vector<Vec> lattice(std::size_t n) const override {
    if (d_ == 1) return Circle(r_, n_).lattice(n);
    if (d_ != 2) throw Unsupported("lattices are implemented for spheres of dimension <= 2");
    // Fibonacci sphere.
    std::vector<Vec> out;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
      const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double ph = golden * static_cast<double>(i);
      Vec m = zeros(n_);
      m[0] = r_ * rad * std::cos(ph);
      m[1] = r_ * rad * std::sin(ph);
      m[2] = r_ * z;
      out.push_back(m);
    }
    return out;
  }
  double measure() const override {
    // Surface measure of the unit d-sphere: 2 pi^((d+1)/2) / Gamma((d+1)/2).
    const double dd = static_cast<double>(d_);
    return 2.0 * std::pow(kPi, (dd + 1) / 2) / std::tgamma((dd + 1) / 2) * std::pow(r_, dd);
  }
  int euler_characteristic() const override { return d_ % 2 == 0 ? 2 : 0; }

 private:
  Vec at(double th, double ph) const {
    Vec m = zeros(n_);
    m[0] = r_ * std::sin(th) * std::cos(ph);
    m[1] = r_ * std::sin(th) * std::sin(ph);
    m[2] = r_ * std::cos(th);
    return m;
  }
  double r_;
  std::size_t d_;
  std::size_t n_;
};

class Torus final : public ManifoldModel {
 public:
  Torus(double big, double small) : a_(big), b_(small) {
    if (!(small > 0.0) || !(big > small)) throw Error("torus needs 0 < minor < major");
  }
  std::string name() const override { return "torus"; }
  std::size_t ambient_dim() const override { return 3; }
  std::size_t intrinsic_dim() const override { return 2; }
  double reach() const override { return std::min(b_, a_ - b_); }
  Vec project(const Vec& x) const override {
    check_ambient(x, 3);
    const double len = std::hypot(x[0], x[1]);
    if (len <= kMedialTol * a_) throw ProjectionUndefined("point on the torus axis");
    Vec c(3);
    c << a_ * x[0] / len, a_ * x[1] / len, 0.0;
    const Vec v = x - c;
    const double vl = v.norm();
    if (vl <= kMedialTol * a_) throw ProjectionUndefined("point on the torus core circle");
    return c + b_ * v / vl;
  }
  AffineFlat tangent(const Vec& m) const override {
    const Vec p = project(m);
    const double th = std::atan2(p[1], p[0]);
    const double ph = std::atan2(p[2], std::hypot(p[0], p[1]) - a_);
    Mat b(3, 2);
    b << -std::sin(th), -std::sin(ph) * std::cos(th),
          std::cos(th), -std::sin(ph) * std::sin(th),
          0.0, std::cos(ph);
    return AffineFlat{p, b};
  }
  Vec at(double th, double ph) const {
    Vec m(3);
    m << (a_ + b_ * std::cos(ph)) * std::cos(th), (a_ + b_ * std::cos(ph)) * std::sin(th), b_ * std::sin(ph);
    return m;
  }
  Vec random_surface_point(Rng& rng) const override {
    // Area element is proportional to a + b cos(ph).
    while (true) {
      const double th = rng.uniform(0.0, 2.0 * kPi);
      const double ph = rng.uniform(0.0, 2.0 * kPi);
      if (rng.uniform() * (a_ + b_) <= a_ + b_ * std::cos(ph)) return at(th, ph);
    }
  }
  std::vector<Vec> witness_grid(double spacing) const override {
    const std::size_t nt = steps(2.0 * kPi * (a_ + b_), spacing);
    const std::size_t np = steps(2.0 * kPi * b_, spacing);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t j = 0; j < np; ++j)
        out.push_back(at(2.0 * kPi * static_cast<double>(i) / static_cast<double>(nt),
                         2.0 * kPi * static_cast<double>(j) / static_cast<double>(np)));
    return out;
  }
  std::vector<Vec> lattice(std::size_t n) const override {
    // Staggered rows around the tube, roughly equilateral at the mean radius.
    auto rows = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n) * b_ / (0.5 * std::sqrt(3.0) * a_))));
    rows = std::max<std::size_t>(4, rows + rows % 2);
    const std::size_t cols = std::max<std::size_t>(3, n / rows);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < rows; ++i) {
      const double ph = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(rows);
      const double shift = (i % 2) ? 0.5 : 0.0;
      for (std::size_t j = 0; j < cols; ++j)
        out.push_back(at(2.0 * kPi * (static_cast<double>(j) + shift) / static_cast<double>(cols), ph));
    }
    return out;
  }
  double measure() const override { return 4.0 * kPi * kPi * a_ * b_; }
  int euler_characteristic() const override { return 0; }

 private:
  double a_, b_;
};

class FlatTorus final : public ManifoldModel {
 public:
  FlatTorus(double r, std::size_t n) : r_(r), n_(n) {
    if (!(r > 0.0)) throw Error("flat torus radius must be positive");
    if (n < 4) throw DimensionMismatch("flat torus needs ambient dimension >= 4");
  }
  std::string name() const override { return "flat_torus"; }
  std::size_t ambient_dim() const override { return n_; }
  std::size_t intrinsic_dim() const override { return 2; }
  double reach() const override { return r_; }
  Vec project(const Vec& x) const override {
    check_ambient(x, n_);
    const double l1 = std::hypot(x[0], x[1]), l2 = std::hypot(x[2], x[3]);
    if (l1 <= kMedialTol * r_ || l2 <= kMedialTol * r_) throw ProjectionUndefined("point on the flat torus medial axis");
    Vec m = zeros(n_);
    m[0] = r_ * x[0] / l1;
    m[1] = r_ * x[1] / l1;
    m[2] = r_ * x[2] / l2;
    m[3] = r_ * x[3] / l2;
    return m;
  }
  AffineFlat tangent(const Vec& m) const override {
    const Vec p = project(m);
    Mat b = Mat::Zero(static_cast<Eigen::Index>(n_), 2);
    b(0, 0) = -p[1] / r_;
    b(1, 0) = p[0] / r_;
    b(2, 1) = -p[3] / r_;
    b(3, 1) = p[2] / r_;
    return AffineFlat{p, b};
  }
  Vec at(double a, double b) const {
    Vec m = zeros(n_);
    m[0] = r_ * std::cos(a);
    m[1] = r_ * std::sin(a);
    m[2] = r_ * std::cos(b);
    m[3] = r_ * std::sin(b);
    return m;
  }
  Vec random_surface_point(Rng& rng) const override {
    const double a = rng.uniform(0.0, 2.0 * kPi);
    return at(a, rng.uniform(0.0, 2.0 * kPi));
  }
  std::vector<Vec> witness_grid(double spacing) const override {
    const std::size_t k = steps(2.0 * kPi * r_, spacing);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        out.push_back(at(2.0 * kPi * static_cast<double>(i) / static_cast<double>(k),
                         2.0 * kPi * static_cast<double>(j) / static_cast<double>(k)));
    return out;
  }
  std::vector<Vec> lattice(std::size_t n) const override {
    auto rows = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n) * 0.5 * std::sqrt(3.0))));
    rows = std::max<std::size_t>(4, rows + rows % 2);
    const std::size_t cols = std::max<std::size_t>(3, n / rows);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < rows; ++i) {
      const double shift = (i % 2) ? 0.5 : 0.0;
      for (std::size_t j = 0; j < cols; ++j)
        out.push_back(at(2.0 * kPi * (static_cast<double>(j) + shift) / static_cast<double>(cols),
                         2.0 * kPi * static_cast<double>(i) / static_cast<double>(rows)));
    }
    return out;
  }
  double measure() const override { return 4.0 * kPi * kPi * r_ * r_; }
  int euler_characteristic() const override { return 0; }

 private:
  double r_;
  std::size_t n_;
};

class Plane final : public ManifoldModel {
 public:
  Plane(std::size_t d, std::size_t n, double lo, double hi) : d_(d), n_(n), lo_(lo), hi_(hi) {
    if (d < 1 || n < d) throw DimensionMismatch("plane needs 1 <= d <= N");
    if (!(hi > lo)) throw Error("plane extent must be nonempty");
  }
  std::string name() const override { return "plane"; }
  std::size_t ambient_dim() const override { return n_; }
  std::size_t intrinsic_dim() const override { return d_; }
  double reach() const override { return kInf; }
  // Projection onto the whole d-flat; the square only bounds sampling.
  Vec project(const Vec& x) const override {
    check_ambient(x, n_);
    Vec m = zeros(n_);
    m.head(static_cast<Eigen::Index>(d_)) = x.head(static_cast<Eigen::Index>(d_));
    return m;
  }
  AffineFlat tangent(const Vec& m) const override {
    Mat b = Mat::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(d_));
    for (std::size_t i = 0; i < d_; ++i) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    return AffineFlat{project(m), b};
  }
  Vec random_surface_point(Rng& rng) const override {
    Vec m = zeros(n_);
    for (std::size_t i = 0; i < d_; ++i) m[static_cast<Eigen::Index>(i)] = rng.uniform(lo_, hi_);
    return m;
  }
  std::vector<Vec> witness_grid(double spacing) const override {
    // Cell half-diagonal sqrt(d) * h / 2 <= spacing.
    const std::size_t k = steps((hi_ - lo_) * std::sqrt(static_cast<double>(d_)) / 2.0, spacing);
    return grid(k, true);
  }
  std::vector<Vec> lattice(std::size_t n) const override {
    const auto k = static_cast<std::size_t>(std::max(1.0, std::round(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d_)))));
    return grid(k, false);
  }
  double measure() const override { return std::pow(hi_ - lo_, static_cast<double>(d_)); }
  int euler_characteristic() const override { return 1; }
  bool closed() const override { return false; }

 private:
  std::vector<Vec> grid(std::size_t k, bool centered) const {
    std::vector<Vec> out;
    std::vector<std::size_t> idx(d_, 0);
    const double h = (hi_ - lo_) / static_cast<double>(centered ? k : std::max<std::size_t>(1, k - 1));
    while (true) {
      Vec m = zeros(n_);
      for (std::size_t i = 0; i < d_; ++i) {
        double t = static_cast<double>(idx[i]) + (centered ? 0.5 : 0.0);
        // Staggered rows avoid cocircular squares in the lattice.
        if (!centered && i == 0 && d_ >= 2 && idx[1] % 2 == 1) t += 0.5;
        m[static_cast<Eigen::Index>(i)] = std::min(hi_, lo_ + t * h);
      }
      out.push_back(m);
      std::size_t i = 0;
      while (i < d_ && ++idx[i] == k) idx[i++] = 0;
      if (i == d_) break;
    }
    return out;
  }
  std::size_t d_, n_;
  double lo_, hi_;
};

}  // namespace

double ManifoldModel::distance(const Vec& x) const { return (x - project(x)).norm(); }

Mat ManifoldModel::normal_basis(const Vec& m) const {
  const AffineFlat t = tangent(m);
  const auto n = static_cast<Eigen::Index>(ambient_dim());
  const auto d = static_cast<Eigen::Index>(intrinsic_dim());
  Eigen::HouseholderQR<Mat> qr(t.basis);
  const Mat q = qr.householderQ();
  return q.rightCols(n - d);
}

bool ManifoldModel::contains(const Vec& m, double tol) const {
  try {
    return distance(m) <= tol * std::max(1.0, m.norm());
  } catch (const ProjectionUndefined&) {
    return false;
  }
}

ModelPtr make_circle(double radius, std::size_t ambient) { return std::make_shared<Circle>(radius, ambient); }
ModelPtr make_sphere(double radius, std::size_t d, std::size_t ambient) {
  return std::make_shared<Sphere2>(radius, d, ambient);
}
ModelPtr make_torus(double major, double minor) { return std::make_shared<Torus>(major, minor); }
ModelPtr make_flat_torus(double radius, std::size_t ambient) { return std::make_shared<FlatTorus>(radius, ambient); }
ModelPtr make_plane(std::size_t d, std::size_t ambient, double lo, double hi) {
  return std::make_shared<Plane>(d, ambient, lo, hi);
}

Vec normal_offset(const ManifoldModel& model, const Vec& m, double r, Rng& rng) {
  const std::size_t k = model.ambient_dim() - model.intrinsic_dim();
  if (k == 0 || r <= 0.0) return m;
  const Mat nb = model.normal_basis(m);
  Vec g(static_cast<Eigen::Index>(k));
  double len = 0.0;
  do {
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = rng.normal();
    len = g.norm();
  } while (len < 1e-12);
  const double rad = r * std::pow(rng.uniform(), 1.0 / static_cast<double>(k));
  return m + nb * (rad * g / len);
}

DenseSample sample_dense(const ManifoldModel& model, const SampleSpec& spec) {
  if (!(spec.epsilon > 0.0)) throw Error("epsilon must be positive");
  if (spec.delta < 0.0) throw Error("delta must be nonnegative");
  Rng rng(spec.seed);
  const double spacing = spec.epsilon / 4.0;
  std::vector<Vec> w = model.witness_grid(spacing);
  rng.shuffle(w.begin(), w.end());
  double greedy = 0.75 * spec.epsilon - spec.delta;
  if (greedy < spec.epsilon / 8.0) greedy = spec.epsilon / 8.0;
  PointCloud kept(model.ambient_dim());
  std::vector<double> d2;
  for (const auto& m : w) {
    if (!kept.empty()) {
      simd::squared_distances(kept, m, d2);
      if (*std::min_element(d2.begin(), d2.end()) <= greedy * greedy) continue;
    }
    kept.push_back(m);
  }
  DenseSample out;
  out.witness_count = w.size();
  out.certified_epsilon = spacing + greedy + spec.delta;
  out.cloud = PointCloud(model.ambient_dim());
  for (std::size_t i = 0; i < kept.size(); ++i) out.cloud.push_back(normal_offset(model, kept.point(i), spec.delta, rng));
  return out;
}

std::vector<Vec> geodesic_sphere(std::size_t frequency, double radius) {
  if (frequency == 0) throw Error("geodesic frequency must be positive");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  const double ico[12][3] = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                             {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  const int faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                            {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                            {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  std::vector<Vec> out;
  std::set<std::array<long long, 3>> seen;
  const double f = static_cast<double>(frequency);
  for (const auto& face : faces) {
    const Eigen::Vector3d a(ico[face[0]][0], ico[face[0]][1], ico[face[0]][2]);
    const Eigen::Vector3d b(ico[face[1]][0], ico[face[1]][1], ico[face[1]][2]);
    const Eigen::Vector3d c(ico[face[2]][0], ico[face[2]][1], ico[face[2]][2]);
    for (std::size_t i = 0; i <= frequency; ++i)
      for (std::size_t j = 0; i + j <= frequency; ++j) {
        const double k = f - static_cast<double>(i + j);
        const Eigen::Vector3d p = ((static_cast<double>(i) * a + static_cast<double>(j) * b + k * c) / f).normalized();
        // Shared edge points are generated once per face; dedupe on rounded coordinates.
        const std::array<long long, 3> key{std::llround(p.x() * 1e9), std::llround(p.y() * 1e9), std::llround(p.z() * 1e9)};
        if (!seen.insert(key).second) continue;
        out.push_back(radius * Vec(p));
      }
  }
  return out;
}

PointCloud sample_lattice(const ManifoldModel& model, std::size_t n, double delta, std::uint64_t seed) {
  Rng rng(seed);
  PointCloud out(model.ambient_dim());
  for (const auto& m : model.lattice(n)) out.push_back(normal_offset(model, m, delta, rng));
  return out;
}

std::vector<Index> extract_net_indices(const PointCloud& cloud, double eps) {
  std::vector<Index> kept;
  if (cloud.empty()) return kept;
  const std::size_t n = cloud.size();
  std::vector<double> best(n, kInf), d2;
  std::size_t next = 0;
  while (true) {
    kept.push_back(static_cast<Index>(next));
    simd::squared_distances(cloud, cloud.point(next), d2);
    for (std::size_t i = 0; i < n; ++i) best[i] = std::min(best[i], d2[i]);
    // First index attaining the maximum keeps the order deterministic.
    next = static_cast<std::size_t>(std::max_element(best.begin(), best.end()) - best.begin());
    if (best[next] < eps * eps) break;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

PointCloud extract_net(const PointCloud& cloud, double eps) { return cloud.subset(extract_net_indices(cloud, eps)); }

HausdorffEstimate hausdorff_to_manifold(const PointCloud& cloud, const ManifoldModel& model, double witness_spacing) {
  if (cloud.empty()) throw Error("empty point cloud");
  HausdorffEstimate h;
  for (std::size_t i = 0; i < cloud.size(); ++i) h.cloud_to_manifold = std::max(h.cloud_to_manifold, model.distance(cloud.point(i)));
  const std::vector<Vec> w = model.witness_grid(witness_spacing);
  std::vector<double> d2;
  for (const auto& m : w) {
    simd::squared_distances(cloud, m, d2);
    h.manifold_to_cloud = std::max(h.manifold_to_cloud, std::sqrt(*std::min_element(d2.begin(), d2.end())));
  }
  h.witness_count = w.size();
  h.manifold_to_cloud_bound = h.manifold_to_cloud + witness_spacing;
  return h;
}

}  // namespace flatdel

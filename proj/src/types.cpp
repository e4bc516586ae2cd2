#include "flatdel/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flatdel {

PointCloud::PointCloud(std::size_t dim) : cols_(dim) {
  if (dim == 0) throw DimensionMismatch("point cloud dimension must be at least 1");
}

PointCloud::PointCloud(std::size_t dim, const std::vector<Vec>& points) : PointCloud(dim) {
  for (auto& c : cols_) c.reserve(points.size());
  for (const auto& p : points) push_back(p);
}

Vec PointCloud::point(std::size_t i) const {
  Vec p(dim());
  for (std::size_t k = 0; k < dim(); ++k) p[k] = cols_[k][i];
  return p;
}

std::vector<const double*> PointCloud::columns() const {
  std::vector<const double*> out;
  out.reserve(dim());
  for (const auto& c : cols_) out.push_back(c.data());
  return out;
}

void PointCloud::set_point(std::size_t i, const Vec& p) {
  if (static_cast<std::size_t>(p.size()) != dim())
    throw DimensionMismatch("point has wrong dimension");
  for (std::size_t k = 0; k < dim(); ++k) cols_[k][i] = p[k];
}

void PointCloud::push_back(const Vec& p) {
  if (static_cast<std::size_t>(p.size()) != dim())
    throw DimensionMismatch("point has wrong dimension");
  for (std::size_t k = 0; k < dim(); ++k) {
    if (!std::isfinite(p[k])) throw Error("non-finite coordinate");
    cols_[k].push_back(p[k]);
  }
  ++n_;
}

std::vector<Vec> PointCloud::points() const {
  std::vector<Vec> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) out.push_back(point(i));
  return out;
}

PointCloud PointCloud::subset(const std::vector<Index>& idx) const {
  PointCloud out(dim());
  for (Index i : idx) out.push_back(point(i));
  return out;
}

Simplex::Simplex(std::initializer_list<Index> v) : Simplex(std::vector<Index>(v)) {}

Simplex::Simplex(std::vector<Index> v) : v_(std::move(v)) {
  std::sort(v_.begin(), v_.end());
  if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
    throw Error("simplex has repeated vertices");
}

bool Simplex::contains(Index i) const { return std::binary_search(v_.begin(), v_.end(), i); }

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
}

Simplex Simplex::without(std::size_t pos) const {
  Simplex s;
  s.v_.reserve(v_.size() - 1);
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (i != pos) s.v_.push_back(v_[i]);
  return s;
}

Simplex Simplex::intersect(const Simplex& other) const {
  Simplex s;
  std::set_intersection(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                        std::back_inserter(s.v_));
  return s;
}

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (v_.size() < 2) return out;
  for (std::size_t i = 0; i < v_.size(); ++i) out.push_back(without(i));
  return out;
}

std::vector<Simplex> Simplex::faces() const {
  std::vector<Simplex> out;
  const std::size_t n = v_.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Simplex s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s.v_.push_back(v_[i]);
    out.push_back(std::move(s));
  }
  return out;
}

std::string Simplex::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v_.size(); ++i) os << (i ? "," : "") << v_[i];
  os << ']';
  return os.str();
}

SimplexSet closure(const SimplexSet& s) {
  SimplexSet out;
  for (const auto& sigma : s)
    for (auto& f : sigma.faces()) out.insert(std::move(f));
  return out;
}

SimplexSet skeleton(const SimplexSet& s, int k) {
  SimplexSet out;
  for (const auto& sigma : s)
    if (sigma.dim() == k) out.insert(sigma);
  return out;
}

int max_dimension(const SimplexSet& s) {
  int m = -1;
  for (const auto& sigma : s) m = std::max(m, sigma.dim());
  return m;
}

std::vector<Vec> gather(const PointCloud& cloud, const Simplex& s) {
  std::vector<Vec> out;
  out.reserve(s.size());
  for (Index i : s) out.push_back(cloud.point(i));
  return out;
}

}  // namespace flatdel

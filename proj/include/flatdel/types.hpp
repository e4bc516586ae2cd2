#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flatdel {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = std::uint32_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Every predicate takes one of these; defaults are the library-wide policy.
struct Tolerance {
  double ortho = 1e-9;        // relative to the local length scale
  double sphere = 1e-9;       // relative to the radius
  double angle = 1e-8;        // radians
  double degenerate = 1e-12;  // times the simplex scale
  double insphere = 1e-9;     // relative to the circumradius
  double hull = 1e-9;         // barycentric slack
  double embed = 1e-8;        // times the complex diameter
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DegenerateSimplex : public Error {
 public:
  using Error::Error;
};
class OutOfRegime : public Error {
 public:
  using Error::Error;
};
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class ProjectionUndefined : public Error {
 public:
  using Error::Error;
};
class InsufficientNeighbors : public Error {
 public:
  using Error::Error;
};
class Unsupported : public Error {
 public:
  using Error::Error;
};
class InjectivityViolation : public Error {
 public:
  InjectivityViolation(const std::string& what, Index a, Index b)
      : Error(what), first(a), second(b) {}
  Index first;
  Index second;
};

// Points stored coordinate-major so the distance kernels stream one axis at a time.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::size_t dim);
  PointCloud(std::size_t dim, const std::vector<Vec>& points);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return cols_.size(); }
  bool empty() const { return n_ == 0; }

  Vec point(std::size_t i) const;
  double coord(std::size_t i, std::size_t k) const { return cols_[k][i]; }
  const double* column(std::size_t k) const { return cols_[k].data(); }
  std::vector<const double*> columns() const;

  void set_point(std::size_t i, const Vec& p);
  void push_back(const Vec& p);
  std::vector<Vec> points() const;
  PointCloud subset(const std::vector<Index>& idx) const;

 private:
  std::vector<std::vector<double>> cols_;
  std::size_t n_ = 0;
};

// Sorted, duplicate-free vertex list.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<Index> v);
  explicit Simplex(std::vector<Index> v);

  const std::vector<Index>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  int dim() const { return static_cast<int>(v_.size()) - 1; }
  Index operator[](std::size_t i) const { return v_[i]; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  bool contains(Index i) const;
  bool is_face_of(const Simplex& other) const;
  Simplex without(std::size_t pos) const;
  Simplex intersect(const Simplex& other) const;
  std::vector<Simplex> facets() const;
  std::vector<Simplex> faces() const;  // all nonempty subsets, itself included
  std::string str() const;

  auto operator<=>(const Simplex&) const = default;
  bool operator==(const Simplex&) const = default;

 private:
  std::vector<Index> v_;
};

using SimplexSet = std::set<Simplex>;

SimplexSet closure(const SimplexSet& s);
SimplexSet skeleton(const SimplexSet& s, int k);  // exactly dimension k
int max_dimension(const SimplexSet& s);
std::vector<Vec> gather(const PointCloud& cloud, const Simplex& s);

}  // namespace flatdel

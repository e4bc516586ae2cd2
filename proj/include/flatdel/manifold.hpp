#pragma once

#include "flatdel/geom.hpp"
#include "flatdel/rng.hpp"
#include "flatdel/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace flatdel {

// Analytic d-manifold in R^N with closed-form nearest-point projection.
class ManifoldModel {
 public:
  virtual ~ManifoldModel() = default;

  virtual std::string name() const = 0;
  virtual std::size_t ambient_dim() const = 0;
  virtual std::size_t intrinsic_dim() const = 0;
  virtual double reach() const = 0;  // lower bound; +inf for flat models

  // Nearest point on M. Throws ProjectionUndefined on (or numerically at) the medial axis.
  virtual Vec project(const Vec& x) const = 0;
  virtual AffineFlat tangent(const Vec& m) const = 0;
  virtual Vec random_surface_point(Rng& rng) const = 0;
  // Points on M such that every point of M lies within `spacing` of one of them.
  virtual std::vector<Vec> witness_grid(double spacing) const = 0;
  // Deterministic, near-uniform n-point sample (regular polygon, Fibonacci sphere, ...).
  virtual std::vector<Vec> lattice(std::size_t n) const = 0;
  virtual double measure() const = 0;  // length, area, ...
  virtual int euler_characteristic() const = 0;
  virtual bool closed() const { return true; }

  double distance(const Vec& x) const;
  Mat normal_basis(const Vec& m) const;  // N x (N-d), orthonormal
  bool contains(const Vec& m, double tol = 1e-9) const;
};

using ModelPtr = std::shared_ptr<const ManifoldModel>;

ModelPtr make_circle(double radius = 1.0, std::size_t ambient = 2);
ModelPtr make_sphere(double radius = 1.0, std::size_t d = 2, std::size_t ambient = 3);
ModelPtr make_torus(double major = 1.0, double minor = 0.35);
ModelPtr make_flat_torus(double radius = 1.0, std::size_t ambient = 4);
// The square [lo,hi]^d in the first d coordinates of R^N. Has boundary; reach is infinite.
ModelPtr make_plane(std::size_t d = 2, std::size_t ambient = 3, double lo = 0.0, double hi = 1.0);

struct SampleSpec {
  double epsilon = 0.1;
  double delta = 0.0;
  double eta = 1.0;
  std::uint64_t seed = 1;
};

struct DenseSample {
  PointCloud cloud;
  double certified_epsilon = 0.0;  // witness spacing + greedy radius + delta
  std::size_t witness_count = 0;
};

// Greedy cover of a shuffled witness grid (spacing eps/4), each kept point pushed off M by
// uniform noise in the normal ball of radius delta.
DenseSample sample_dense(const ManifoldModel& model, const SampleSpec& spec);

// Subdivided icosahedron projected to the 2-sphere in R^3: 10 f^2 + 2 points.
std::vector<Vec> geodesic_sphere(std::size_t frequency, double radius = 1.0);

// Points of the lattice with optional normal noise.
PointCloud sample_lattice(const ManifoldModel& model, std::size_t n, double delta = 0.0, std::uint64_t seed = 1);

// Uniform point in the normal ball of radius r at m.
Vec normal_offset(const ManifoldModel& model, const Vec& m, double r, Rng& rng);

// Farthest-point net seeded at index 0: pairwise separation >= eps, covers P at radius eps.
// Returns the kept indices in ascending order.
std::vector<Index> extract_net_indices(const PointCloud& cloud, double eps);
PointCloud extract_net(const PointCloud& cloud, double eps);

struct HausdorffEstimate {
  double cloud_to_manifold = 0.0;     // exact via projection
  double manifold_to_cloud = 0.0;     // max over witnesses
  double manifold_to_cloud_bound = 0.0;  // plus the witness spacing
  std::size_t witness_count = 0;
};
HausdorffEstimate hausdorff_to_manifold(const PointCloud& cloud, const ManifoldModel& model, double witness_spacing);

}  // namespace flatdel

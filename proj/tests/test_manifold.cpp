#include "oracles.hpp"

#include "flatdel/audit.hpp"
#include "flatdel/geom.hpp"
#include "flatdel/manifold.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace flatdel;
using oracle::vec;

namespace {

void check_model_invariants(const ManifoldModel& m, std::uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < 100; ++i) {
    const Vec p = m.random_surface_point(rng);
    CHECK(m.contains(p, 1e-12));
    CHECK((m.project(p) - p).norm() <= 1e-12);
    const AffineFlat t = m.tangent(p);
    CHECK(t.dim() == m.intrinsic_dim());
    CHECK((t.basis.transpose() * t.basis - Mat::Identity(t.dim(), t.dim())).norm() < 1e-12);
    const Mat nb = m.normal_basis(p);
    CHECK(nb.cols() == static_cast<Eigen::Index>(m.ambient_dim() - m.intrinsic_dim()));
    CHECK((nb.transpose() * t.basis).norm() < 1e-12);
    // Projection of a point pushed along the normal returns to the foot.
    if (nb.cols() > 0 && std::isfinite(m.reach())) {
      const Vec x = p + 0.3 * m.reach() * nb.col(0);
      CHECK((m.project(x) - p).norm() < 1e-9);
    }
  }
}

}  // namespace

TEST_SUITE("manifold") {

TEST_CASE("circle model") {
  const ModelPtr c = make_circle(2.0, 3);
  CHECK(c->reach() == 2.0);
  CHECK(c->intrinsic_dim() == 1);
  CHECK(c->project(vec({4, 0, 0})).isApprox(vec({2, 0, 0})));
  CHECK_THROWS_AS(c->project(vec({0, 0, 0})), ProjectionUndefined);
  const AffineFlat t = c->tangent(vec({2, 0, 0}));
  CHECK(std::abs(std::abs(t.basis(1, 0)) - 1) < 1e-15);
  CHECK(c->measure() == doctest::Approx(4 * std::numbers::pi));
  CHECK(c->euler_characteristic() == 0);
  check_model_invariants(*c, 1);
}

TEST_CASE("sphere model") {
  const ModelPtr s = make_sphere(1.5);
  CHECK(s->reach() == 1.5);
  CHECK(s->project(vec({0, 3, 0})).isApprox(vec({0, 1.5, 0})));
  CHECK_THROWS_AS(s->project(vec({0, 0, 0})), ProjectionUndefined);
  const AffineFlat t = s->tangent(vec({0, 0, 1.5}));
  CHECK(std::abs(t.basis(2, 0)) < 1e-15);
  CHECK(std::abs(t.basis(2, 1)) < 1e-15);
  CHECK(s->euler_characteristic() == 2);
  check_model_invariants(*s, 2);
}

TEST_CASE("torus model") {
  const ModelPtr t = make_torus(1.0, 0.35);
  CHECK(t->reach() == doctest::Approx(0.35));
  CHECK(make_torus(1.0, 0.6)->reach() == doctest::Approx(0.4));
  CHECK_THROWS_AS(t->project(vec({0, 0, 0.2})), ProjectionUndefined);
  CHECK_THROWS_AS(make_torus(0.3, 0.5), Error);
  check_model_invariants(*t, 3);

  // Nearest point against a dense parameter mesh.
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Vec x = oracle::torus_point(rng.uniform(0, 6.28), rng.uniform(0, 6.28), 1.0, 0.35) +
                  0.1 * oracle::random_gaussian(3, rng);
    const Vec p = t->project(x);
    double best = kInf;
    for (int a = 0; a < 400; ++a)
      for (int b = 0; b < 400; ++b)
        best = std::min(best, (x - oracle::torus_point(a * 2 * std::numbers::pi / 400, b * 2 * std::numbers::pi / 400,
                                                        1.0, 0.35)).norm());
    CHECK((x - p).norm() <= best + 1e-12);
    CHECK((x - p).norm() >= best - 0.01);
  }
}

TEST_CASE("flat torus and plane models") {
  const ModelPtr ft = make_flat_torus(1.0);
  CHECK(ft->intrinsic_dim() == 2);
  CHECK(ft->ambient_dim() == 4);
  CHECK(ft->reach() == doctest::Approx(1.0));
  check_model_invariants(*ft, 5);

  const ModelPtr pl = make_plane(2, 3);
  CHECK(std::isinf(pl->reach()));
  CHECK_FALSE(pl->closed());
  CHECK(pl->project(vec({0.3, 0.4, 7})).isApprox(vec({0.3, 0.4, 0})));
  check_model_invariants(*pl, 6);
}

TEST_CASE("witness grids cover the manifold at their spacing") {
  Rng rng(7);
  for (const ModelPtr& m : {make_circle(), make_sphere(), make_torus(), make_plane(2, 3)}) {
    const double spacing = 0.1;
    const std::vector<Vec> w = m->witness_grid(spacing);
    const PointCloud grid(m->ambient_dim(), w);
    for (int i = 0; i < 200; ++i) {
      const Vec p = m->random_surface_point(rng);
      double best = kInf;
      for (const auto& q : w) best = std::min(best, (p - q).norm());
      CHECK(best <= spacing);
    }
  }
}

TEST_CASE("dense samples") {
  const ModelPtr c = make_circle();
  SampleSpec spec;
  spec.epsilon = 0.1;
  const DenseSample s = sample_dense(*c, spec);
  CHECK(s.cloud.size() >= 32);
  for (std::size_t i = 0; i < s.cloud.size(); ++i) CHECK(c->distance(s.cloud.point(i)) < 1e-12);
  const HausdorffEstimate h = hausdorff_to_manifold(s.cloud, *c, 1e-3);
  CHECK(h.manifold_to_cloud_bound <= s.certified_epsilon + 1e-12);
  CHECK(s.certified_epsilon <= spec.epsilon + 1e-12);

  spec.delta = 0.02;
  const DenseSample noisy = sample_dense(*make_sphere(), spec);
  double worst = 0;
  for (std::size_t i = 0; i < noisy.cloud.size(); ++i) worst = std::max(worst, make_sphere()->distance(noisy.cloud.point(i)));
  CHECK(worst <= 0.02 + 1e-12);
  CHECK(worst > 0);

  // Same seed, same cloud.
  const DenseSample again = sample_dense(*make_sphere(), spec);
  REQUIRE(again.cloud.size() == noisy.cloud.size());
  for (std::size_t i = 0; i < again.cloud.size(); ++i) CHECK(again.cloud.point(i) == noisy.cloud.point(i));

  spec.epsilon = 10.0;
  spec.delta = 0.0;
  CHECK(sample_dense(*c, spec).cloud.size() >= 1);
  spec.epsilon = 0;
  CHECK_THROWS_AS(sample_dense(*c, spec), Error);
}

TEST_CASE("farthest-point nets") {
  const ModelPtr c = make_circle();
  const PointCloud ring(2, c->lattice(12));
  CHECK(extract_net(ring, 0.4).size() == 12);

  PointCloud dup(2, {vec({0, 0}), vec({0, 0}), vec({1, 0})});
  CHECK(extract_net_indices(dup, 0.5) == std::vector<Index>{0, 2});

  Rng rng(8);
  PointCloud uniform(2);
  for (int i = 0; i < 100; ++i) uniform.push_back(c->random_surface_point(rng));
  const PointCloud net = extract_net(uniform, 0.2);
  CHECK(separation(net) >= 0.2);
  for (std::size_t i = 0; i < uniform.size(); ++i) {
    double best = kInf;
    for (std::size_t j = 0; j < net.size(); ++j) best = std::min(best, (uniform.point(i) - net.point(j)).norm());
    CHECK(best <= 0.2);
  }
}

TEST_CASE("Hausdorff estimates") {
  const ModelPtr c = make_circle(1.5);
  const PointCloud on(2, c->lattice(50));
  CHECK(hausdorff_to_manifold(on, *c, 0.01).cloud_to_manifold < 1e-12);
  const PointCloud one(2, {vec({1.5, 0})});
  CHECK(hausdorff_to_manifold(one, *c, 0.001).manifold_to_cloud == doctest::Approx(3.0).epsilon(1e-3));
  CHECK_THROWS_AS(hausdorff_to_manifold(PointCloud(2), *c, 0.1), Error);
}

TEST_CASE("lattices and the geodesic sphere") {
  const std::vector<Vec> g = geodesic_sphere(7);
  CHECK(g.size() == 492);
  for (const auto& p : g) CHECK(p.norm() == doctest::Approx(1.0));
  CHECK(separation(PointCloud(3, g)) > 0.1);
  CHECK(geodesic_sphere(1).size() == 12);
  CHECK_THROWS_AS(geodesic_sphere(0), Error);

  CHECK(make_circle()->lattice(64).size() == 64);
  CHECK(make_sphere()->lattice(500).size() == 500);
  const PointCloud noisy = sample_lattice(*make_torus(), 300, 0.01, 3);
  for (std::size_t i = 0; i < noisy.size(); ++i) CHECK(make_torus()->distance(noisy.point(i)) <= 0.01 + 1e-12);
}

TEST_CASE("normal offsets stay in the normal ball") {
  const ModelPtr s = make_sphere();
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const Vec m = s->random_surface_point(rng);
    const Vec x = normal_offset(*s, m, 0.05, rng);
    CHECK((x - m).norm() <= 0.05 + 1e-15);
    CHECK((s->project(x) - m).norm() < 1e-12);
  }
}

}  // TEST_SUITE

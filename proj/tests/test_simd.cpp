#include "oracles.hpp"

#include "flatdel/simd.hpp"

#include <doctest.h>

#include <cmath>

using namespace flatdel;

namespace {

PointCloud random_cloud(std::size_t dim, std::size_t n, Rng& rng) {
  PointCloud c(dim);
  for (std::size_t i = 0; i < n; ++i) c.push_back(oracle::random_gaussian(dim, rng));
  return c;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar kernels match a direct loop") {
  Rng rng(1);
  const PointCloud c = random_cloud(3, 37, rng);
  const auto cols = c.columns();
  const Vec q = oracle::random_gaussian(3, rng);
  std::vector<double> out(c.size());
  simd::scalar::table.squared_distances(cols.data(), 3, c.size(), q.data(), out.data());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(out[i] == doctest::Approx((c.point(i) - q).squaredNorm()));
  simd::scalar::table.sphere_gaps(cols.data(), 3, c.size(), q.data(), 0.7, out.data());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(out[i] == doctest::Approx(std::abs((c.point(i) - q).norm() - 0.7)));
  std::size_t inside = 0;
  for (std::size_t i = 0; i < c.size(); ++i) inside += (c.point(i) - q).squaredNorm() < 1.5 ? 1 : 0;
  CHECK(simd::scalar::table.count_inside(cols.data(), 3, c.size(), q.data(), 1.5) == inside);
}

TEST_CASE("vector kernels agree with scalar kernels bit for bit") {
  if (!simd::isa_supported(simd::Isa::avx2)) {
    MESSAGE("avx2 not available on this machine; skipped");
    return;
  }
  const auto& s = simd::kernels(simd::Isa::scalar);
  const auto& v = simd::kernels(simd::Isa::avx2);
  Rng rng(2);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 130u}) {
    for (std::size_t dim : {1u, 2u, 3u, 5u}) {
      const PointCloud c = random_cloud(dim, n, rng);
      const auto cols = c.columns();
      const Vec q = oracle::random_gaussian(dim, rng);
      std::vector<double> a(n), b(n);
      s.squared_distances(cols.data(), dim, n, q.data(), a.data());
      v.squared_distances(cols.data(), dim, n, q.data(), b.data());
      CHECK(a == b);
      s.sphere_gaps(cols.data(), dim, n, q.data(), 1.1, a.data());
      v.sphere_gaps(cols.data(), dim, n, q.data(), 1.1, b.data());
      CHECK(a == b);
      CHECK(s.count_inside(cols.data(), dim, n, q.data(), 2.0) == v.count_inside(cols.data(), dim, n, q.data(), 2.0));
    }
  }
}

TEST_CASE("isa names and dispatch") {
  CHECK(std::string(simd::isa_name(simd::Isa::scalar)) == "scalar");
  CHECK(std::string(simd::isa_name(simd::Isa::avx2)) == "avx2");
  CHECK(simd::isa_supported(simd::Isa::scalar));
  CHECK(simd::isa_supported(simd::active_isa()));
}

TEST_CASE("closed ball query") {
  Rng rng(3);
  const PointCloud c = random_cloud(2, 200, rng);
  const Vec center = oracle::random_gaussian(2, rng);
  const auto hits = simd::ball_query(c, center, 0.8);
  std::vector<Index> expected;
  for (std::size_t i = 0; i < c.size(); ++i)
    if ((c.point(i) - center).norm() <= 0.8) expected.push_back(static_cast<Index>(i));
  CHECK(hits == expected);

  // A point exactly on the sphere is inside the closed ball.
  PointCloud line(1, {oracle::vec({0}), oracle::vec({1}), oracle::vec({2})});
  CHECK(simd::ball_query(line, oracle::vec({0}), 1.0) == std::vector<Index>{0, 1});
}

TEST_CASE("squared distances reject a wrong query dimension") {
  PointCloud c(2, {oracle::vec({0, 0})});
  std::vector<double> out;
  CHECK_THROWS_AS(simd::squared_distances(c, oracle::vec({1, 2, 3}), out), DimensionMismatch);
}

}  // TEST_SUITE

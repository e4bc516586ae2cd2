#include "oracles.hpp"

#include "flatdel/lp.hpp"

#include <doctest.h>

#include <cmath>

using namespace flatdel;
using oracle::vec;

namespace {

Mat rows(std::initializer_list<std::initializer_list<double>> r) {
  Mat m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("textbook optimum") {
  // max x + y, x + 2y <= 4, 3x + y <= 6: vertex (1.6, 1.2).
  const auto r = lp::maximize(vec({1, 1}), rows({{1, 2}, {3, 1}}), {lp::Relation::le, lp::Relation::le}, vec({4, 6}));
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.value == doctest::Approx(2.8));
  CHECK(r.x.isApprox(vec({1.6, 1.2})));
}

TEST_CASE("equality and lower-bound rows") {
  // max -x - y, x + y = 3, x >= 1: value -3.
  const auto r = lp::maximize(vec({-1, -1}), rows({{1, 1}, {1, 0}}), {lp::Relation::eq, lp::Relation::ge}, vec({3, 1}));
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.value == doctest::Approx(-3));
  CHECK(r.x[0] >= 1 - 1e-12);
}

TEST_CASE("infeasible and unbounded programs") {
  const auto inf = lp::maximize(vec({1}), rows({{1}, {1}}), {lp::Relation::le, lp::Relation::ge}, vec({1, 2}));
  CHECK(inf.status == lp::Status::infeasible);
  const auto unb = lp::maximize(vec({1, 0}), rows({{0, 1}}), {lp::Relation::le}, vec({1}));
  CHECK(unb.status == lp::Status::unbounded);
}

TEST_CASE("negative right-hand sides are normalized") {
  // -x <= -2 means x >= 2; minimize x.
  const auto r = lp::maximize(vec({-1}), rows({{-1}}), {lp::Relation::le}, vec({-2}));
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.x[0] == doctest::Approx(2));
}

TEST_CASE("random two-variable programs against vertex enumeration") {
  Rng rng(9);
  for (int inst = 0; inst < 300; ++inst) {
    const std::size_t m = 2 + rng.below(5);
    Mat a(static_cast<Eigen::Index>(m), 2);
    Vec b(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      a(i, 0) = rng.uniform(0.1, 2);
      a(i, 1) = rng.uniform(0.1, 2);
      b[i] = rng.uniform(0.5, 3);
    }
    const Vec c = vec({rng.uniform(-1, 2), rng.uniform(-1, 2)});
    const auto r = lp::maximize(c, a, std::vector<lp::Relation>(m, lp::Relation::le), b);
    REQUIRE(r.status == lp::Status::optimal);
    // Candidate vertices: pairs of tight constraints among the rows and x >= 0.
    Mat all(static_cast<Eigen::Index>(m + 2), 2);
    Vec rhs(static_cast<Eigen::Index>(m + 2));
    all.topRows(m) = a;
    rhs.head(m) = b;
    all.row(m) << -1, 0;
    all.row(m + 1) << 0, -1;
    rhs[m] = rhs[m + 1] = 0;
    double best = -1e300;
    for (Eigen::Index i = 0; i < all.rows(); ++i)
      for (Eigen::Index j = i + 1; j < all.rows(); ++j) {
        Eigen::Matrix2d s;
        s << all(i, 0), all(i, 1), all(j, 0), all(j, 1);
        if (std::abs(s.determinant()) < 1e-12) continue;
        const Eigen::Vector2d x = s.inverse() * Eigen::Vector2d(rhs[i], rhs[j]);
        bool ok = true;
        for (Eigen::Index k = 0; k < all.rows(); ++k) ok = ok && all.row(k).dot(x) <= rhs[k] + 1e-9;
        if (ok) best = std::max(best, c[0] * x[0] + c[1] * x[1]);
      }
    CHECK(r.value == doctest::Approx(best).epsilon(1e-9));
  }
}

}  // TEST_SUITE

#pragma once

#include "flatdel/types.hpp"

#include <vector>

namespace flatdel::lp {

enum class Relation { le, eq, ge };
enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  double value = 0.0;
  Vec x;
};

// maximize c.x subject to row_i(A).x (rel_i) b_i and x >= 0.
// Dense two-phase simplex with Bland's rule; meant for the tiny programs of the geometric checks.
Result maximize(const Vec& c, const Mat& a, const std::vector<Relation>& rel, const Vec& b,
                double eps = 1e-11);

}  // namespace flatdel::lp

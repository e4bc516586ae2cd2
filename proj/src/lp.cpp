#include "flatdel/lp.hpp"

#include <cmath>

namespace flatdel::lp {

namespace {

struct Tableau {
  Mat t;  // rows 0..m-1 constraints, row m objective (reduced costs); last column rhs
  std::vector<Eigen::Index> basis;
  Eigen::Index m = 0;
  Eigen::Index cols = 0;  // variable columns

  void pivot(Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Minimizes the objective row convention: entering column has negative reduced cost.
  Status run(const std::vector<bool>& allowed, double eps) {
    const Eigen::Index obj = m;
    for (int iter = 0; iter < 10000; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < cols; ++j)
        if (allowed[static_cast<std::size_t>(j)] && t(obj, j) < -eps) {
          enter = j;
          break;
        }
      if (enter < 0) return Status::optimal;
      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (t(i, enter) > eps) {
          const double ratio = t(i, cols) / t(i, enter);
          if (leave < 0 || ratio < best - eps ||
              (std::abs(ratio - best) <= eps && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return Status::unbounded;
      pivot(leave, enter);
    }
    return Status::unbounded;
  }
};

}  // namespace

Result maximize(const Vec& c, const Mat& a, const std::vector<Relation>& rel, const Vec& b, double eps) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (c.size() != n || b.size() != m || static_cast<Eigen::Index>(rel.size()) != m)
    throw DimensionMismatch("linear program has inconsistent sizes");

  // Normalize to b >= 0.
  Mat A = a;
  Vec B = b;
  std::vector<Relation> R = rel;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (B[i] < 0.0) {
      A.row(i) *= -1.0;
      B[i] = -B[i];
      if (R[static_cast<std::size_t>(i)] == Relation::le) R[static_cast<std::size_t>(i)] = Relation::ge;
      else if (R[static_cast<std::size_t>(i)] == Relation::ge) R[static_cast<std::size_t>(i)] = Relation::le;
    }
  }
  Eigen::Index n_slack = 0, n_art = 0;
  for (auto r : R) {
    if (r != Relation::eq) ++n_slack;
    if (r != Relation::le) ++n_art;
  }
  Tableau tab;
  tab.m = m;
  tab.cols = n + n_slack + n_art;
  tab.t = Mat::Zero(m + 1, tab.cols + 1);
  tab.basis.assign(static_cast<std::size_t>(m), 0);
  Eigen::Index s = n, art = n + n_slack;
  std::vector<bool> is_art(static_cast<std::size_t>(tab.cols), false);
  for (Eigen::Index i = 0; i < m; ++i) {
    tab.t.block(i, 0, 1, n) = A.row(i);
    tab.t(i, tab.cols) = B[i];
    const Relation r = R[static_cast<std::size_t>(i)];
    if (r == Relation::le) {
      tab.t(i, s) = 1.0;
      tab.basis[static_cast<std::size_t>(i)] = s++;
    } else {
      if (r == Relation::ge) tab.t(i, s++) = -1.0;
      tab.t(i, art) = 1.0;
      is_art[static_cast<std::size_t>(art)] = true;
      tab.basis[static_cast<std::size_t>(i)] = art++;
    }
  }

  Result res;
  std::vector<bool> allowed(static_cast<std::size_t>(tab.cols), true);
  if (n_art > 0) {
    // Phase one: minimize the sum of artificials.
    for (Eigen::Index i = 0; i < m; ++i)
      if (is_art[static_cast<std::size_t>(tab.basis[static_cast<std::size_t>(i)])]) tab.t.row(m) -= tab.t.row(i);
    for (Eigen::Index j = 0; j < tab.cols; ++j)
      if (is_art[static_cast<std::size_t>(j)]) tab.t(m, j) = 0.0;
    tab.run(allowed, eps);
    const double scale = 1.0 + B.cwiseAbs().maxCoeff();
    if (-tab.t(m, tab.cols) > 1e-9 * scale) {
      res.status = Status::infeasible;
      return res;
    }
    // Drive remaining artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!is_art[static_cast<std::size_t>(tab.basis[static_cast<std::size_t>(i)])]) continue;
      for (Eigen::Index j = 0; j < tab.cols; ++j)
        if (!is_art[static_cast<std::size_t>(j)] && std::abs(tab.t(i, j)) > eps) {
          tab.pivot(i, j);
          break;
        }
    }
    for (Eigen::Index j = 0; j < tab.cols; ++j)
      if (is_art[static_cast<std::size_t>(j)]) allowed[static_cast<std::size_t>(j)] = false;
  }

  // Phase two objective: minimize -c.x.
  tab.t.row(m).setZero();
  tab.t.block(m, 0, 1, n) = -c.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bcol = tab.basis[static_cast<std::size_t>(i)];
    if (bcol < n && c[bcol] != 0.0) tab.t.row(m) += c[bcol] * tab.t.row(i);
  }
  const Status st = tab.run(allowed, eps);
  if (st == Status::unbounded) {
    res.status = Status::unbounded;
    return res;
  }
  res.status = Status::optimal;
  res.x = Vec::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bcol = tab.basis[static_cast<std::size_t>(i)];
    if (bcol < n) res.x[bcol] = tab.t(i, tab.cols);
  }
  res.value = c.dot(res.x);
  return res;
}

}  // namespace flatdel::lp

#include "flatdel/enumerate.hpp"

#include "flatdel/geom.hpp"
#include "flatdel/parallel.hpp"
#include "flatdel/simd.hpp"

#include <algorithm>
#include <iterator>

namespace flatdel {

std::vector<std::vector<Index>> neighbor_lists(const PointCloud& cloud, double r) {
  std::vector<std::vector<Index>> out(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t i) {
    auto& l = out[i];
    simd::ball_query(cloud, cloud.point(i), r, l);
    l.erase(std::remove(l.begin(), l.end(), static_cast<Index>(i)), l.end());
  });
  return out;
}

namespace {

// Extends `cur` with vertices from `cand` (all > cur.back()), pruning on partial smallness.
bool extend(const PointCloud& cloud, const std::vector<std::vector<Index>>& nbr, double rho, std::size_t size,
            std::vector<Index>& cur, const std::vector<Index>& cand, const Tolerance& tol,
            const std::function<bool(const Simplex&)>& visit) {
  if (cur.size() == size) return visit(Simplex(cur));
  for (std::size_t a = 0; a < cand.size(); ++a) {
    const Index j = cand[a];
    cur.push_back(j);
    bool ok = true;
    if (cur.size() >= 3) ok = is_rho_small(cloud, Simplex(cur), rho, tol);
    if (ok) {
      std::vector<Index> next;
      if (cur.size() < size) {
        const auto& nj = nbr[j];
        std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(a) + 1, cand.end(), nj.begin(), nj.end(),
                              std::back_inserter(next));
      }
      if (!extend(cloud, nbr, rho, size, cur, next, tol, visit)) return false;
    }
    cur.pop_back();
  }
  return true;
}

bool visit_from(const PointCloud& cloud, const std::vector<std::vector<Index>>& nbr, double rho, std::size_t size,
                Index i, const Tolerance& tol, const std::function<bool(const Simplex&)>& visit) {
  std::vector<Index> cur{i};
  if (size == 1) return visit(Simplex(cur));
  std::vector<Index> cand;
  for (Index j : nbr[i])
    if (j > i) cand.push_back(j);
  return extend(cloud, nbr, rho, size, cur, cand, tol, visit);
}

}  // namespace

void for_each_rho_small(const PointCloud& cloud, double rho, std::size_t size,
                        const std::function<bool(const Simplex&)>& visit, const Tolerance& tol) {
  if (size == 0 || rho < 0.0) return;
  // Pairs within 2 rho (with the smallness slack) are exactly the rho-small edges.
  const auto nbr = neighbor_lists(cloud, 2.0 * rho * (1.0 + tol.sphere));
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (!visit_from(cloud, nbr, rho, size, static_cast<Index>(i), tol, visit)) return;
}

std::vector<Simplex> rho_small_simplices(const PointCloud& cloud, double rho, std::size_t size, const Tolerance& tol) {
  std::vector<Simplex> out;
  if (size == 0 || rho < 0.0) return out;
  const auto nbr = neighbor_lists(cloud, 2.0 * rho * (1.0 + tol.sphere));
  std::vector<std::vector<Simplex>> slots(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t i) {
    visit_from(cloud, nbr, rho, size, static_cast<Index>(i), tol, [&](const Simplex& s) {
      slots[i].push_back(s);
      return true;
    });
  });
  for (auto& s : slots) std::move(s.begin(), s.end(), std::back_inserter(out));
  return out;
}

}  // namespace flatdel

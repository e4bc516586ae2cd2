#pragma once

#include "flatdel/types.hpp"

#include <functional>
#include <vector>

namespace flatdel {

// For each point, the other points within distance r (closed), ascending.
std::vector<std::vector<Index>> neighbor_lists(const PointCloud& cloud, double r);

// Visits every rho-small simplex with `size` vertices in lexicographic order. Candidates are
// drawn from the 2 rho neighbor lists: a rho-small simplex has all pairwise distances <= 2 rho.
// The visitor returns false to stop early.
void for_each_rho_small(const PointCloud& cloud, double rho, std::size_t size,
                        const std::function<bool(const Simplex&)>& visit, const Tolerance& tol = {});

// Same set, collected in parallel (one slot per first vertex) and returned sorted.
std::vector<Simplex> rho_small_simplices(const PointCloud& cloud, double rho, std::size_t size,
                                         const Tolerance& tol = {});

}  // namespace flatdel

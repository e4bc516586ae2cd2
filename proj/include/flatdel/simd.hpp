#pragma once

#include "flatdel/types.hpp"

#include <cstddef>
#include <vector>

namespace flatdel::simd {

enum class Isa { scalar, avx2 };

// Points arrive coordinate-major: cols[k][i] is coordinate k of point i.
struct Kernels {
  // out[i] = sum_k (cols[k][i] - q[k])^2
  void (*squared_distances)(const double* const* cols, std::size_t dim, std::size_t n,
                            const double* q, double* out);
  // out[i] = | ||x_i - c|| - r |
  void (*sphere_gaps)(const double* const* cols, std::size_t dim, std::size_t n,
                      const double* c, double r, double* out);
  // number of i with ||x_i - c||^2 < r2
  std::size_t (*count_inside)(const double* const* cols, std::size_t dim, std::size_t n,
                              const double* c, double r2);
};

bool isa_supported(Isa isa);
const char* isa_name(Isa isa);

// Best supported ISA, unless FLATDEL_SIMD=scalar forces the reference path.
Isa active_isa();
const Kernels& kernels();
const Kernels& kernels(Isa isa);

namespace scalar {
extern const Kernels table;
}
namespace avx2 {
extern const Kernels table;
}

// Closed-ball query: indices i (ascending) with ||p_i - center|| <= r.
void ball_query(const PointCloud& cloud, const Vec& center, double r, std::vector<Index>& out);
std::vector<Index> ball_query(const PointCloud& cloud, const Vec& center, double r);

// Squared distances from one query to every point of the cloud.
void squared_distances(const PointCloud& cloud, const Vec& q, std::vector<double>& out);

}  // namespace flatdel::simd

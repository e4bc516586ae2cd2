#include "flatdel/simd.hpp"

#include <cmath>

namespace flatdel::simd::scalar {
namespace {

void squared_distances(const double* const* cols, std::size_t dim, std::size_t n,
                       const double* q, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double* x = cols[k];
    const double qk = q[k];
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x[i] - qk;
      out[i] = out[i] + d * d;
    }
  }
}

void sphere_gaps(const double* const* cols, std::size_t dim, std::size_t n, const double* c,
                 double r, double* out) {
  squared_distances(cols, dim, n, c, out);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(std::sqrt(out[i]) - r);
}

std::size_t count_inside(const double* const* cols, std::size_t dim, std::size_t n,
                         const double* c, double r2) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = cols[k][i] - c[k];
      acc = acc + d * d;
    }
    if (acc < r2) ++count;
  }
  return count;
}

}  // namespace

const Kernels table{squared_distances, sphere_gaps, count_inside};

}  // namespace flatdel::simd::scalar

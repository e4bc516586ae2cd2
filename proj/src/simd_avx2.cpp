#include "flatdel/simd.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define FLATDEL_SIMD_X86 1
#include <immintrin.h>
#endif

#include <cmath>

namespace flatdel::simd::avx2 {

#ifdef FLATDEL_SIMD_X86
namespace {

// Same operation order as the scalar kernels (sub, mul, add per axis) so results match bit for bit.
__attribute__((target("avx2"))) void squared_distances(const double* const* cols,
                                                       std::size_t dim, std::size_t n,
                                                       const double* q, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(cols[k] + i), _mm256_set1_pd(q[k]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = cols[k][i] - q[k];
      acc = acc + d * d;
    }
    out[i] = acc;
  }
}

__attribute__((target("avx2"))) void sphere_gaps(const double* const* cols, std::size_t dim,
                                                 std::size_t n, const double* c, double r,
                                                 double* out) {
  squared_distances(cols, dim, n, c, out);
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d g = _mm256_sub_pd(_mm256_sqrt_pd(_mm256_loadu_pd(out + i)), vr);
    _mm256_storeu_pd(out + i, _mm256_andnot_pd(sign, g));
  }
  for (; i < n; ++i) out[i] = std::fabs(std::sqrt(out[i]) - r);
}

__attribute__((target("avx2"))) std::size_t count_inside(const double* const* cols,
                                                         std::size_t dim, std::size_t n,
                                                         const double* c, double r2) {
  std::size_t count = 0;
  const __m256d vr2 = _mm256_set1_pd(r2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(cols[k] + i), _mm256_set1_pd(c[k]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(acc, vr2, _CMP_LT_OQ));
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) {
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
#else
// Never selected: isa_supported(Isa::avx2) is false off x86.
const Kernels table = scalar::table;
#endif

}  // namespace flatdel::simd::avx2

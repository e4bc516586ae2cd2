#include "flatdel/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace flatdel::simd {

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa active_isa() {
  static const Isa chosen = [] {
    const char* env = std::getenv("FLATDEL_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  }();
  return chosen;
}

const Kernels& kernels(Isa isa) {
  if (!isa_supported(isa)) throw Unsupported(std::string("ISA not available: ") + isa_name(isa));
  return isa == Isa::avx2 ? avx2::table : scalar::table;
}

const Kernels& kernels() { return kernels(active_isa()); }

void squared_distances(const PointCloud& cloud, const Vec& q, std::vector<double>& out) {
  if (static_cast<std::size_t>(q.size()) != cloud.dim())
    throw DimensionMismatch("query has wrong dimension");
  out.resize(cloud.size());
  const auto cols = cloud.columns();
  kernels().squared_distances(cols.data(), cloud.dim(), cloud.size(), q.data(), out.data());
}

void ball_query(const PointCloud& cloud, const Vec& center, double r, std::vector<Index>& out) {
  out.clear();
  if (cloud.empty() || r < 0.0) return;
  thread_local std::vector<double> d2;
  squared_distances(cloud, center, d2);
  const double r2 = r * r;
  for (std::size_t i = 0; i < d2.size(); ++i)
    if (d2[i] <= r2) out.push_back(static_cast<Index>(i));
}

std::vector<Index> ball_query(const PointCloud& cloud, const Vec& center, double r) {
  std::vector<Index> out;
  ball_query(cloud, center, r, out);
  return out;
}

}  // namespace flatdel::simd

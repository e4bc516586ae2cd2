#pragma once

#include <cstdint>
#include <random>

namespace flatdel {

// Seeded stream with distribution code of our own so draws match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);
  double normal();                         // standard normal, Box-Muller
  std::size_t below(std::size_t n);        // uniform integer in [0, n)

  template <class It>
  void shuffle(It first, It last) {
    for (auto n = last - first; n > 1; --n) std::swap(first[n - 1], first[below(n)]);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace flatdel

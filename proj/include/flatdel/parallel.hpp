#pragma once

#include <cstddef>
#include <functional>

namespace flatdel {

// Worker count: hardware concurrency, capped by FLATDEL_THREADS when set.
std::size_t thread_count();

// Runs body(i) for i in [0, n). Callers write into per-index slots so merges stay ordered.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace flatdel

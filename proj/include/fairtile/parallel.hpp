#pragma once

#include <cstddef>
#include <functional>

namespace fairtile {

// Worker count: FAIRTILE_THREADS if set to a positive integer, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n) across worker threads. Iterations must write to
// disjoint state; callers reduce afterwards in index order for determinism.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fairtile

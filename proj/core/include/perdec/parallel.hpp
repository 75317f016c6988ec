#pragma once

#include <cstddef>
#include <functional>

namespace perdec {

// Worker cap: PERDEC_THREADS if set to a positive integer, else the hardware
// concurrency (at least 1).
std::size_t max_threads();

// Runs fn(0..n-1) on up to max_threads() threads. Each index is processed
// exactly once; the first exception thrown is rethrown after all workers
// stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace perdec

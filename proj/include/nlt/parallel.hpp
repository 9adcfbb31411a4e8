#pragma once
// Minimal fork-join helper for embarrassingly parallel post-processing and
// sweeps. Worker count comes from NLT_WORKERS, else the hardware concurrency.

#include <cstddef>
#include <functional>

namespace nlt {

/// NLT_WORKERS if set to a positive integer, else max(1, hardware threads).
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) on up to `workers` threads (0 = worker_count()).
/// Indices are claimed dynamically; the first exception is rethrown after all
/// workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, std::size_t workers = 0);

}  // namespace nlt

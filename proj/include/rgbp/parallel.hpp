#pragma once

#include <cstddef>
#include <functional>

namespace rgbp {

// Worker cap from RGBP_THREADS (0 or unset = hardware concurrency).
int worker_count();

// Runs fn(0..n-1) on up to worker_count() threads. Results must be written to
// caller-owned slots indexed by i; iteration order is unspecified.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace rgbp

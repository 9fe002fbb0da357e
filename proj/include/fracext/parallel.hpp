#pragma once

#include <functional>

namespace fracext {

/// Worker count: FRACEXT_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_threads();

/// Runs body(i) for i in [0, count) on up to worker_threads() threads.
/// Each index is handled exactly once; the first exception is rethrown.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace fracext

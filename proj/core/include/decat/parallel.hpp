#pragma once

#include <cstddef>
#include <functional>

namespace decat {

// Worker cap: DECAT_THREADS when set to a positive integer, else the hardware
// concurrency (at least 1).
std::size_t thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads. Callers write
// results into per-index slots, so the outcome does not depend on scheduling.
// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace decat

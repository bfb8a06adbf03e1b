#pragma once

#include <cstddef>
#include <functional>

namespace covfun {

// Worker count: COVFUN_THREADS if set and positive, else the hardware
// concurrency (at least 1).
int thread_count();

// Runs body(i) for i in [0, count) on up to thread_count() threads. Each
// index is executed exactly once; callers write results into per-index slots
// so reductions stay independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace covfun

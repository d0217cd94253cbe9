#pragma once

#include <functional>

namespace chiralwg {

/// Worker count: hardware concurrency capped by the CHIRALWG_THREADS
/// environment variable (a value of 1 disables threading).
int max_threads();

/// Runs fn(0..n-1) across worker threads. Callers make results deterministic
/// by writing to preassigned slots; the schedule carries no state.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace chiralwg

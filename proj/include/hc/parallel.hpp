#pragma once

#include <functional>

namespace hc {

// Worker count: HOPF_CONTRACT_THREADS if set and positive, else the hardware concurrency.
int thread_count();
// Runs fn(0..n-1) on up to thread_count() threads. Callers write results into
// per-index slots, so output does not depend on the schedule.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace hc

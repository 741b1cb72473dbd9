#pragma once

#include <cstddef>
#include <functional>

namespace ietlab {

// Thread budget for data-parallel sweeps (default 1).
int thread_budget();
void set_thread_budget(int n);

// Calls fn(i) for i in [0, count), split into contiguous chunks over up to
// `threads` workers (thread_budget() when threads <= 0). The first exception
// thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace ietlab

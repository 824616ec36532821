#pragma once

#include <cstddef>
#include <functional>

namespace minkprobe {

// MINKPROBE_THREADS if set to a positive integer, else the hardware
// concurrency (at least 1).
std::size_t default_thread_count();

// Calls fn(i) for i in [0, n) on up to `threads` workers (0: default count).
// The first exception by index is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace minkprobe

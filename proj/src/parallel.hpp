#pragma once

#include <cstddef>
#include <functional>

namespace srsense {

// Effective worker count: `requested` if nonzero, else the SRSENSE_THREADS
// environment variable, else the hardware concurrency.
std::size_t worker_count(std::size_t requested);

// Runs fn(0..n-1) across up to `threads` workers. Each index owns its own
// output slot, so results are independent of scheduling; with threads <= 1
// the loop runs inline. The first exception thrown by any worker is
// rethrown on the calling thread.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace srsense

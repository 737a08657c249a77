#pragma once

#include <cstddef>
#include <functional>

namespace plurirand {

// Worker count: PLURIRAND_WORKERS when set, hardware concurrency otherwise.
std::size_t default_worker_count();

// Runs fn(0..count-1) across workers. Each index must own its output slot;
// results are then independent of scheduling, which is what keeps reports
// byte-identical across worker counts. The first exception thrown by any
// worker is rethrown after the pool drains.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  std::size_t workers = 0);

}  // namespace plurirand

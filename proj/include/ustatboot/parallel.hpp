#pragma once

#include <cstddef>
#include <functional>

namespace ustatboot {

/// Worker count from USTATBOOT_THREADS, else std::thread::hardware_concurrency().
unsigned default_threads();

/// Resolves 0 to default_threads().
unsigned resolve_threads(unsigned requested);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception thrown by any
/// task is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace ustatboot

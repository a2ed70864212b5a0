#pragma once

#include <cstddef>
#include <functional>

namespace pbs {

/// Worker count: PBS_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Each index is
/// processed exactly once; results must be written to disjoint slots so the
/// output does not depend on scheduling. The first exception thrown by any
/// task is rethrown after all workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pbs

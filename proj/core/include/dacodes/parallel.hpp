#pragma once

#include <cstddef>
#include <functional>

namespace dacodes {

/// Number of worker threads: explicit `requested` if > 0, else the
/// DACODES_JOBS environment variable, else hardware concurrency.
int effective_threads(int requested);

/// Runs fn(i) for i in [0, n) across threads. Work items must be
/// independent; callers own any merging, which keeps results identical for
/// every thread count.
void parallel_for(size_t n, int n_threads, const std::function<void(size_t)>& fn);

}  // namespace dacodes

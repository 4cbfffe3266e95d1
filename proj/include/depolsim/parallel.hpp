#pragma once

#include <functional>

namespace depolsim {

int hardware_threads();

/// Runs fn(begin, end, worker) over a partition of [0, count) into `threads`
/// contiguous chunks (0 means hardware_threads()). Callers keep one
/// accumulator slot per worker and merge in worker order after the join;
/// combined with per-index RNG streams this makes every Monte Carlo result
/// independent of the thread count.
void parallel_chunks(long count, int threads, const std::function<void(long, long, int)> &fn);

}  // namespace depolsim

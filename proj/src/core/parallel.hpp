#pragma once

#include <functional>

namespace aoc {

// Runs fn(i) for i in [0, count) on up to `workers` threads with static
// contiguous chunking. Callers must write results into per-index slots;
// any reduction happens after the join, in index order, so the outcome is
// bitwise independent of the worker count.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

} // namespace aoc

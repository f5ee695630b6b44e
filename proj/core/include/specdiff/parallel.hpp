#pragma once

#include <cstddef>
#include <functional>

namespace specdiff {

/// Worker count: SPECDIFF_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
[[nodiscard]] std::size_t thread_limit();

/// Runs fn(i) for i in [0, count). Work is split into contiguous chunks, so
/// results written to per-index slots are independent of the thread count.
/// The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace specdiff

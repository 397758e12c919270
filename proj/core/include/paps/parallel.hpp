#pragma once

#include <cstddef>
#include <functional>

namespace paps {

/// Worker count: PAPS_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n), split into contiguous blocks across threads.
/// The first exception thrown by any block is rethrown after all join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace paps

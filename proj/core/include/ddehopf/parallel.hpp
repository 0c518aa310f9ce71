#pragma once

#include <cstddef>
#include <functional>

namespace ddehopf {

/// Worker count: DDEHOPF_THREADS if set and positive, otherwise the available
/// hardware parallelism (at least 1).
std::size_t default_workers();

/// Runs fn(first, last, block_index) over [0, n) split into fixed-size blocks,
/// scheduling blocks onto `workers` threads (0 = default_workers()).
///
/// The block layout depends only on (n, block_size), never on the worker
/// count or schedule, so callers that write per-block results and reduce them
/// in block order get bit-identical output regardless of concurrency.
/// The first exception thrown by any block is rethrown on the caller thread.
void parallel_blocks(std::size_t n, std::size_t block_size, std::size_t workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace ddehopf

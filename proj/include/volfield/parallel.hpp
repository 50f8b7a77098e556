#pragma once

#include <cstddef>
#include <functional>

namespace volfield {

// Worker count: min(hardware, 8), capped by the VOLFIELD_THREADS environment
// variable.  A value of 0 or 1 disables threading.
int worker_count();

// Partitions [0, n) into contiguous chunks and runs body(begin, end) on each,
// possibly concurrently.  Chunk boundaries depend only on n, never on the
// worker count, so writes into preallocated per-index slots are deterministic.
// Reductions belong to the caller, after this returns.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace volfield

#pragma once

#include <cstddef>
#include <functional>

namespace disc {

// Worker count: DISC_THREADS env var caps it, 0 or 1 means serial
// deterministic mode, unset means hardware concurrency.
int max_threads();

// Splits [0, n) into contiguous chunks, one worker per chunk. Every index is
// handled exactly once by one thread, so results never depend on the thread
// count as long as `body` writes only to its own indices.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace disc

#pragma once

#include <cstddef>
#include <functional>

namespace superflat {

// worker count: hardware concurrency, capped by the SUPERFLAT_THREADS
// environment variable when set (0 or 1 disables threading)
std::size_t thread_cap();

// run body(i) for i in [0, count); tasks must be independent; the first
// exception thrown by any task is rethrown on the calling thread
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace superflat

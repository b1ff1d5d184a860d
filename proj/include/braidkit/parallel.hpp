#pragma once

#include <cstddef>
#include <functional>

namespace braidkit {

// Number of worker threads: BRAIDKIT_THREADS when set (clamped to >= 1),
// otherwise hardware concurrency.
std::size_t worker_count();

// Runs fn(i) for i in [0, count) across worker_count() threads in contiguous
// blocks. fn must be safe to call concurrently for distinct i. Exceptions
// propagate (first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace braidkit

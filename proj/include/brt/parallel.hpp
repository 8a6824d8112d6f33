#pragma once

#include <cstddef>
#include <functional>

namespace brt {

/// Worker count: hardware concurrency, capped by the BRT_THREADS
/// environment variable when it holds a positive integer.
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) across worker_count() threads. Each index is
/// visited exactly once; fn must only write state owned by its index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace brt

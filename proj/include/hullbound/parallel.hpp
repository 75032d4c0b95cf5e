#pragma once

#include <cstddef>
#include <functional>

namespace hullbound {

// Worker count: hardware concurrency, capped by the HULLBOUND_THREADS
// environment variable when set (values below 1 clamp to 1).
std::size_t thread_count();

// Runs fn(i) for every i in [0, n) across up to thread_count() threads with a
// static chunk split. fn must only touch state owned by index i. If any call
// throws, the exception with the lowest index is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hullbound

#pragma once

#include <cstddef>
#include <functional>

namespace liestab {

/// Worker count: LIESTAB_THREADS when set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs fn(i) for i in [0, count) on up to thread_count() threads. Each index is
/// visited exactly once; callers write results by index so output order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace liestab

#pragma once

#include <cstddef>
#include <functional>

namespace hoferlab::util {

// Number of worker threads to use. Honors the HOFERLAB_THREADS environment
// variable (values < 1 fall back to 1); defaults to hardware concurrency.
std::size_t thread_budget();

// Runs fn(i) for i in [0, count). Work is chunked over thread_budget()
// threads; fn must write only to disjoint slots so results are independent
// of interleaving. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace hoferlab::util

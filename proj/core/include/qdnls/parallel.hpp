#pragma once

#include <cstddef>
#include <functional>

namespace qdnls {

// Worker count: QDNLS_THREADS if set (clamped >= 1), else hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n). Each index writes only its own output slot,
// so results are identical for any worker count; reductions happen afterwards
// in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace qdnls

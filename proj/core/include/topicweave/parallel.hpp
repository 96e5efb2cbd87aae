#pragma once

#include <cstddef>
#include <functional>

namespace topicweave {

// Worker count: TOPICWEAVE_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n). Callers write results into slot i so the outcome
// does not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace topicweave

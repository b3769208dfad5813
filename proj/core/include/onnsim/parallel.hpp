#pragma once

#include <cstddef>
#include <functional>

namespace onnsim {

// Worker count from ONN_SIM_THREADS; 0 or unset means hardware concurrency.
std::size_t thread_count();

// Runs body(begin, end) over a static partition of [0, n). Each index is
// visited exactly once; results must not depend on the partition.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace onnsim

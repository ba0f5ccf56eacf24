#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace cev {

// Calls body(i) for i in [0, n) on up to `threads` threads. The first
// exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body);

// Sum by a fixed binary tree, so the result does not depend on how the
// terms were produced.
double pairwise_sum(std::span<const double> values);

int hardware_threads();

}  // namespace cev

#pragma once

#include <cstdint>
#include <functional>

namespace facecap {

// Global worker cap, set once by the CLI (--threads); defaults to the
// hardware concurrency.
int max_threads();
void set_max_threads(int n);

// Runs fn(i) for i in [begin, end), split into contiguous blocks across
// workers. fn must only touch state owned by index i; results are then
// independent of the thread count.
void parallel_for(int64_t begin, int64_t end,
                  const std::function<void(int64_t)>& fn);

}  // namespace facecap

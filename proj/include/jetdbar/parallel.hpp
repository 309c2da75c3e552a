#pragma once

#include <cstddef>
#include <functional>

namespace jetdbar {

/// Worker count for numeric loops (default 1). Results never depend on it:
/// every output slot is written by exactly one worker.
void set_threads(int count);
int threads();

/// Run body(begin, end) over [0, count) split into contiguous blocks.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace jetdbar

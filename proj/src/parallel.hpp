#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace absorb::detail {

// Splits [0, n) into `workers` contiguous chunks and runs fn(begin, end) on
// each. If any chunk throws, the exception of the lowest-indexed failing chunk
// is rethrown after all threads join.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn &&fn) {
  const std::size_t chunks = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (chunks == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      threads.emplace_back([&, c, begin, end] {
        try {
          fn(begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace absorb::detail

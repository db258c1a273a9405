#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace speclim {

/// Runs body(i) for i in [0, count) on up to `threads` workers with a
/// static interleaved schedule. Every index writes only its own output, so
/// results do not depend on the thread count. The first exception thrown by
/// any index (lowest index wins) is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr first;
  std::size_t first_index = count;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < count; i += threads) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(mu);
            if (i < first_index) {
              first_index = i;
              first = std::current_exception();
            }
            return;
          }
        }
      });
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace speclim

#pragma once

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace entscope {

/// Worker cap: min(hardware concurrency, ENTSCOPE_THREADS when set).
inline int worker_count() {
  unsigned hc = std::thread::hardware_concurrency();
  int n = hc == 0 ? 1 : static_cast<int>(hc);
  if (const char* env = std::getenv("ENTSCOPE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<int>(v);
  }
  return n;
}

/// Runs fn(i) for i in [0, n). Items must be independent; callers make runs
/// deterministic by writing results into index i of a pre-sized vector and
/// merging after the join, never by completion order.
template <typename Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
  const int workers = std::min<std::int64_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::int64_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace entscope

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sphlab {

inline int default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// out[i] = f(i) for i < n, evaluated by a pool of workers. Results are stored
/// by index, so the output never depends on scheduling. The first exception
/// thrown by any task is rethrown after all workers have stopped.
template <typename F>
auto parallel_map(size_t n, int workers, F&& f) -> std::vector<decltype(f(size_t{}))> {
  using R = decltype(f(size_t{}));
  std::vector<R> out(n);
  workers = std::max(1, std::min<int>(workers, int(n)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= n || stop.load()) return;
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
  return out;
}

}  // namespace sphlab

#include "volfield/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace volfield {

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  n = std::min(n, 8);
  if (const char* env = std::getenv("VOLFIELD_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const int workers = worker_count();
  // Fixed chunking: 4 chunks per worker slot keeps the split independent of
  // scheduling while giving some load balance.
  const std::size_t chunks = std::min<std::size_t>(n, static_cast<std::size_t>(workers) * 4);
  if (workers <= 1 || chunks <= 1) {
    body(0, n);
    return;
  }

  const std::size_t chunk_size = (n + chunks - 1) / chunks;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t begin = 0; begin < n; begin += chunk_size)
    ranges.emplace_back(begin, std::min(begin + chunk_size, n));

  std::exception_ptr failure;
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= ranges.size()) return;
        try {
          body(ranges[idx].first, ranges[idx].second);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace volfield

#include "grrlab/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace grr {

long long parallel_count(std::size_t n, int jobs,
                         const std::function<bool(std::size_t)>& fn) {
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || n < 2) {
    long long count = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (fn(i)) ++count;
    return count;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<long long> total{0};
  auto worker = [&] {
    long long local = 0;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      if (fn(i)) ++local;
    }
    total.fetch_add(local);
  };
  std::vector<std::thread> pool;
  int nthreads = jobs;
  if (static_cast<std::size_t>(nthreads) > n) nthreads = static_cast<int>(n);
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return total.load();
}

}  // namespace grr

#include "disc/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace disc {

namespace {

int read_thread_env() {
  const char* env = std::getenv("DISC_THREADS");
  if (env == nullptr) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

thread_local bool inside_parallel_region = false;

}  // namespace

int max_threads() {
  static const int n = read_thread_env();
  return n;
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const int workers =
      inside_parallel_region ? 1 : std::min<std::size_t>(max_threads(), n);
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers) - 1);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 1; w < workers; ++w) {
    std::size_t begin = chunk * static_cast<std::size_t>(w);
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&body, begin, end] {
      inside_parallel_region = true;
      body(begin, end);
    });
  }
  inside_parallel_region = true;
  body(0, std::min(n, chunk));
  inside_parallel_region = false;
  for (auto& t : threads) t.join();
}

}  // namespace disc

#include "partialk/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace partialk {

namespace {

std::atomic<int> g_max_threads{0};

int env_threads() {
  const char* s = std::getenv("PARTIALK_THREADS");
  if (!s) return 0;
  const int v = std::atoi(s);
  return v > 0 ? v : 0;
}

}  // namespace

int max_threads() {
  const int set = g_max_threads.load();
  if (set > 0) return set;
  const int env = env_threads();
  if (env > 0) return env;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void set_max_threads(int n) { g_max_threads.store(n > 0 ? n : 0); }

void parallel_for(Eigen::Index n,
                  const std::function<void(Eigen::Index, Eigen::Index)>& fn) {
  if (n <= 0) return;
  const int workers = std::min<Eigen::Index>(max_threads(), n);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const Eigen::Index chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const Eigen::Index begin = w * chunk;
    const Eigen::Index end = std::min<Eigen::Index>(begin + chunk, n);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace partialk

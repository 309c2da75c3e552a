#include "jetdbar/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

namespace jetdbar {

namespace {
std::atomic<int> g_threads{1};
}

void set_threads(int count) {
  if (count < 1) throw std::invalid_argument("thread count must be at least 1");
  g_threads = count;
}

int threads() { return g_threads; }

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body) {
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(g_threads.load()), count);
  if (workers <= 1) {
    if (count) body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t b = w * block, e = std::min(count, b + block);
    if (b < e) pool.emplace_back(body, b, e);
  }
  for (auto& t : pool) t.join();
}

}  // namespace jetdbar

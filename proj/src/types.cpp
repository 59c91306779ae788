#include "hp/types.hpp"

#include <atomic>
#include <thread>

namespace hp {

namespace {

double pairwise(const double* v, std::size_t n) {
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise(v, half) + pairwise(v + half, n - half);
}

std::atomic<int> g_workers{0};

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return values.empty() ? 0.0 : pairwise(values.data(), values.size());
}

void set_worker_count(int workers) { g_workers.store(workers > 0 ? workers : 0); }

int worker_count() {
  const int w = g_workers.load();
  if (w > 0) return w;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace hp

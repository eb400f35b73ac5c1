#ifndef PICARDO_DETAIL_PARALLEL_HPP
#define PICARDO_DETAIL_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace picardo::detail {

/// Worker count from PICARDO_THREADS (0 or unset = hardware concurrency).
inline std::size_t thread_count() {
  std::size_t n = 0;
  if (const char* env = std::getenv("PICARDO_THREADS")) {
    try {
      n = static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      n = 0;
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

/// Calls fn(i) for i in [0, n). Rows are split into contiguous chunks; each
/// fn(i) must only write state owned by row i. The first exception thrown
/// (lowest chunk) is rethrown.
template <class Fn>
void parallel_for(std::size_t n, std::size_t work_per_row, Fn&& fn) {
  constexpr std::size_t kMinParallelWork = std::size_t{1} << 16;
  std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1 || n * work_per_row < kMinParallelWork) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Pairwise (cascade) summation in index order; the result depends only on
/// the values, never on scheduling.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

} // namespace picardo::detail

#endif // PICARDO_DETAIL_PARALLEL_HPP

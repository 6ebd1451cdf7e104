#ifndef UAVCOV_PARALLEL_HPP
#define UAVCOV_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace uavcov {

/// Worker count: explicit request (0 = hardware concurrency), capped by COV_THREADS.
/// Results never depend on it.
inline std::size_t resolve_workers(std::size_t requested = 0) {
  std::size_t n = requested;
  if (n == 0) n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COV_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
    } catch (const std::exception&) {
      // unparsable cap is ignored
    }
  }
  return std::max<std::size_t>(1, n);
}

/// Runs fn(chunk) for chunk in [0, n_chunks) on up to `workers` threads. Chunks are claimed
/// dynamically; callers write to per-chunk slots and reduce in chunk order afterwards.
template <class Fn>
void parallel_for_chunks(std::size_t n_chunks, std::size_t workers, Fn&& fn) {
  workers = std::min(std::max<std::size_t>(1, workers), std::max<std::size_t>(1, n_chunks));
  if (workers == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_chunks);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Pairwise (tree) sum in index order; bit-stable for a fixed input vector.
inline double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return v[0];
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace uavcov

#endif  // UAVCOV_PARALLEL_HPP

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cylclasses::detail {

/// Hardware concurrency capped by CYLCLASSES_THREADS.
inline int default_worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("CYLCLASSES_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

/// Runs fn(chunk_index, begin, end) over [0, count) in fixed-size chunks.
/// Chunk boundaries do not depend on the worker count; callers merge
/// per-chunk results in chunk order to stay deterministic.
template <class Fn>
void parallel_chunks(int workers, std::size_t count, std::size_t chunk_size,
                     Fn&& fn) {
  if (count == 0) return;
  const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  const std::size_t w_cap = std::min<std::size_t>(
      chunks, static_cast<std::size_t>(std::max(1, workers)));
  const int w = static_cast<int>(w_cap);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    try {
      while (true) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) break;
        const std::size_t b = c * chunk_size;
        fn(c, b, std::min(count, b + chunk_size));
      }
    } catch (...) {
      std::scoped_lock lk(error_mu);
      if (!error) error = std::current_exception();
    }
  };
  if (w == 1) {
    run();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (int i = 0; i < w; ++i) threads.emplace_back(run);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace cylclasses::detail

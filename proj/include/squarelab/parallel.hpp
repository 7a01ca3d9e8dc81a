#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace squarelab {

// Resolves a worker count: an explicit request wins, then the
// SQUARELAB_THREADS environment variable, then hardware concurrency.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SQUARELAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(shard_index, begin, end) over [lo, hi) split into contiguous
// chunks, one per worker.  Results must be merged by the caller in shard
// order so the outcome is independent of scheduling.
template <typename Fn>
void parallel_chunks(std::uint64_t lo, std::uint64_t hi, unsigned threads, Fn&& fn) {
  if (hi <= lo) return;
  std::uint64_t n = hi - lo;
  unsigned workers = resolve_threads(threads);
  if (workers > n) workers = static_cast<unsigned>(n);
  if (workers <= 1) {
    fn(0u, lo, hi);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::uint64_t chunk = n / workers, extra = n % workers, start = lo;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t len = chunk + (w < extra ? 1 : 0);
    std::uint64_t b = start, e = start + len;
    start = e;
    pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
  }
  for (auto& t : pool) t.join();
}

// Map-reduce over [lo, hi): each shard folds into its own accumulator via
// `body(acc, index)`; shard accumulators are merged left-to-right in shard
// order via `merge(total, acc)` for a deterministic result.
template <typename Acc, typename Body, typename Merge>
Acc parallel_reduce(std::uint64_t lo, std::uint64_t hi, unsigned threads, Acc init,
                    Body&& body, Merge&& merge) {
  unsigned workers = resolve_threads(threads);
  if (hi > lo && workers > hi - lo) workers = static_cast<unsigned>(hi - lo);
  if (workers == 0) workers = 1;
  std::vector<Acc> accs(workers, init);
  parallel_chunks(lo, hi, workers, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) body(accs[w], i);
  });
  Acc total = init;
  for (auto& a : accs) merge(total, a);
  return total;
}

}  // namespace squarelab

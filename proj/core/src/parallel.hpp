#pragma once

// Deterministic first-hit map-reduce over an index range.
//
// The range is cut into a fixed number of chunks that depends only on its
// length. Workers take chunks in increasing order; each chunk stops at its own
// first hit. A chunk beyond the earliest known hit is skipped, which never
// skips a chunk that precedes the true first hit. The reduction walks the
// chunks in index order and stops after the first one with a hit, so the
// result does not depend on the number of workers or their scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "dirmono/checker.hpp"

namespace dirmono::detail {

template <class Hit>
struct ChunkResult {
  ScanStats stats;
  std::optional<Hit> hit;
};

inline std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

template <class Hit, class ChunkFn>
ChunkResult<Hit> first_hit_reduce(std::size_t total, std::size_t threads, const ChunkFn& run_chunk) {
  constexpr std::size_t kChunks = 512;
  const std::size_t chunks = std::max<std::size_t>(1, std::min(total, kChunks));
  std::vector<ChunkResult<Hit>> results(chunks);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};

  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      if (c > first_hit.load()) continue;
      const std::size_t begin = total * c / chunks;
      const std::size_t end = total * (c + 1) / chunks;
      results[c] = run_chunk(begin, end);
      if (results[c].hit) {
        std::size_t seen = first_hit.load();
        while (c < seen && !first_hit.compare_exchange_weak(seen, c)) {
        }
      }
    }
  };

  const std::size_t workers = std::min(resolve_threads(threads), chunks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  ChunkResult<Hit> total_result;
  for (auto& r : results) {
    total_result.stats.merge(r.stats);
    if (r.hit) {
      total_result.hit = std::move(r.hit);
      break;
    }
  }
  return total_result;
}

}  // namespace dirmono::detail

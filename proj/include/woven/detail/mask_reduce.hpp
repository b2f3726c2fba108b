#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace woven::detail {

inline int resolve_threads(int requested, std::uint64_t total) {
  if (total < 2048) return 1;  // not worth spawning for small ranges
  if (requested <= 0) {
    unsigned hc = std::thread::hardware_concurrency();
    requested = hc ? static_cast<int>(hc) : 1;
  }
  if (static_cast<std::uint64_t>(requested) > total) {
    requested = static_cast<int>(total);
  }
  return requested;
}

// Pure map over masks [0, total) with an associative, commutative merge.
// Chunks are contiguous and the per-mask function must not depend on
// evaluation order, so the result is independent of scheduling.
template <typename Local, typename PerMask, typename Merge>
Local mask_reduce(std::uint64_t total, int threads, Local init,
                  PerMask per_mask, Merge merge) {
  int t = resolve_threads(threads, total);
  if (t <= 1) {
    Local acc = init;
    for (std::uint64_t m = 0; m < total; ++m) per_mask(m, acc);
    return acc;
  }

  std::vector<Local> locals(static_cast<std::size_t>(t), init);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  const std::uint64_t chunk = total / static_cast<std::uint64_t>(t);
  const std::uint64_t rem = total % static_cast<std::uint64_t>(t);
  std::uint64_t lo = 0;
  for (int k = 0; k < t; ++k) {
    const std::uint64_t hi = lo + chunk + (static_cast<std::uint64_t>(k) < rem ? 1 : 0);
    pool.emplace_back([&per_mask, &locals, k, lo, hi] {
      Local& local = locals[static_cast<std::size_t>(k)];
      for (std::uint64_t m = lo; m < hi; ++m) per_mask(m, local);
    });
    lo = hi;
  }
  for (auto& th : pool) th.join();

  Local acc = locals[0];
  for (std::size_t k = 1; k < locals.size(); ++k) acc = merge(acc, locals[k]);
  return acc;
}

}  // namespace woven::detail

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace holobrace {

// Largest number of invariant factors we ever handle (orders <= 5^4, so
// rank <= 4 in practice; 6 leaves headroom for the extra-d construction).
inline constexpr int kMaxRank = 6;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a verified algebraic property fails; indicates a bug, not
// a bad input, so callers are not expected to recover.
struct PropertyViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Deterministic generator for sampled property checks. Not libstdc++'s
// distributions, so sampled test sets are identical across platforms.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
};

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(worker, lo, hi) over a partition of [0, n). Workers must write
// only into per-worker slots; the caller merges them in index order so the
// combined result does not depend on scheduling.
inline void parallel_chunks(uint64_t n, int threads,
                            const std::function<void(int, uint64_t, uint64_t)>& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n < 2) {
    fn(0, 0, n);
    return;
  }
  uint64_t nt = std::min<uint64_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (uint64_t w = 0; w < nt; ++w) {
    uint64_t lo = n * w / nt;
    uint64_t hi = n * (w + 1) / nt;
    pool.emplace_back([&fn, w, lo, hi] { fn(static_cast<int>(w), lo, hi); });
  }
  for (auto& th : pool) th.join();
}

inline bool is_odd_prime(uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (uint32_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline uint64_t ipow(uint64_t base, uint32_t exp) {
  uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

// Exact binomial coefficient; callers only need m <= 625, k <= 6, which
// fits comfortably in 64 bits.
inline uint64_t binomial(uint64_t m, uint32_t k) {
  if (k > m) return 0;
  uint64_t r = 1;
  for (uint32_t i = 1; i <= k; ++i) {
    r = r * (m - k + i) / i;
  }
  return r;
}

}  // namespace holobrace

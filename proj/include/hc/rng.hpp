#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace hc {

// splitmix64 counter scrambler. Streams for (seed, index) offset the state by
// multiples of the 64-bit golden ratio, so trial i draws the same numbers no
// matter which worker runs it. The exact update is pinned here because CSV
// reproducibility depends on it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Draw in [0, n) by modulo. n == 0 is a caller bug.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// First `size` entries of a Fisher-Yates shuffle of {0,...,p-1}
// (of {1,...,p-1} when zero is excluded). size is clamped to the pool.
inline std::vector<std::uint32_t> sample_residues(SplitMix64& rng, std::uint32_t p,
                                                  std::uint32_t size, bool exclude_zero) {
  std::vector<std::uint32_t> pool(exclude_zero ? p - 1 : p);
  std::iota(pool.begin(), pool.end(), exclude_zero ? 1u : 0u);
  if (size > pool.size()) size = static_cast<std::uint32_t>(pool.size());
  for (std::uint32_t i = 0; i < size; ++i) {
    std::uint64_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  return pool;
}

}  // namespace hc

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hc/field.hpp"
#include "hc/fpset.hpp"

namespace hc {

// Additive cube: base point a0 plus all subset sums of the generators.
// Repeated and zero generators are allowed; the expanded cardinality can be
// anywhere in [1, min(2^d, p)].
struct HilbertCube {
  std::uint32_t a0 = 0;
  std::vector<std::uint32_t> gens;

  std::size_t dim() const { return gens.size(); }
};

inline constexpr std::size_t max_cube_dim = 30;

// All values a0 + sum over S of gens, S over subsets. Built incrementally as
// H_j = H_{j-1} union (H_{j-1} + a_j).
FpSet expand(const PrimeField& f, const HilbertCube& c);

// Cardinalities of the prefix cubes H_0, ..., H_d.
std::vector<std::uint32_t> prefix_cardinalities(const PrimeField& f, const HilbertCube& c);

struct CubePartition {
  FpSet u;  // prefix cube H_i, the smallest with #H_i >= H/R
  FpSet v;  // zero-based cube on the remaining generators
  std::size_t split_index = 0;
  double r = 0.0;
};

// Splits the cube into U + V with #U >= H/R, #U < 2H/R and #V >= R/2.
// R must lie in [2, H/2]; boundary comparisons against H/R are exact.
CubePartition partition(const PrimeField& f, const HilbertCube& c, double big_r);

struct ResidueRange {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;  // inclusive

  std::uint64_t size() const { return lo <= hi ? hi - lo + 1 : 0; }
};

// Lexicographic stream of canonical cubes: a0 over a0_range, generators
// nondecreasing within gen_range (kills permutation duplicates).
class CubeEnumerator {
 public:
  static constexpr std::uint64_t max_total = 1'000'000'000;

  CubeEnumerator(std::uint32_t p, std::size_t d, ResidueRange a0_range, ResidueRange gen_range);

  std::optional<HilbertCube> next();

  // Number of cubes the stream will produce.
  std::uint64_t total() const { return total_; }

 private:
  std::size_t d_;
  ResidueRange a0_range_, gen_range_;
  std::uint64_t total_;
  HilbertCube cur_;
  bool started_ = false, done_ = false;
};

// exact sign of card * r - target, for nonnegative integers and finite r > 0
int compare_scaled(std::uint64_t card, double r, std::uint64_t target);

}  // namespace hc

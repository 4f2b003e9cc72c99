#include "hc/cube.hpp"

#include <cmath>

namespace hc {

namespace {

void check_cube(const PrimeField& f, const HilbertCube& c) {
  if (c.dim() > max_cube_dim) throw DimensionTooLarge("cube dimension capped at 30");
  if (c.a0 >= f.p()) throw RangeError("cube base point out of range");
  for (const std::uint32_t g : c.gens)
    if (g >= f.p()) throw RangeError("cube generator out of range");
}

}  // namespace

FpSet expand(const PrimeField& f, const HilbertCube& c) {
  check_cube(f, c);
  FpSet h(f.p());
  h.insert(c.a0);
  std::vector<std::uint64_t> scratch(h.words().size());
  for (const std::uint32_t g : c.gens) {
    std::copy(h.words().begin(), h.words().end(), scratch.begin());
    kern::rotate_or(h.mutable_words().data(), scratch.data(), g, f.p());
  }
  h.recount();
  return h;
}

std::vector<std::uint32_t> prefix_cardinalities(const PrimeField& f, const HilbertCube& c) {
  check_cube(f, c);
  std::vector<std::uint32_t> cards;
  cards.reserve(c.dim() + 1);
  FpSet h(f.p());
  h.insert(c.a0);
  cards.push_back(1);
  std::vector<std::uint64_t> scratch(h.words().size());
  for (const std::uint32_t g : c.gens) {
    std::copy(h.words().begin(), h.words().end(), scratch.begin());
    kern::rotate_or(h.mutable_words().data(), scratch.data(), g, f.p());
    h.recount();
    cards.push_back(h.card());
  }
  return cards;
}

int compare_scaled(std::uint64_t card, double r, std::uint64_t target) {
  if (!(r > 0.0) || !std::isfinite(r)) throw RangeError("scale must be positive and finite");
  if (card == 0) return target == 0 ? 0 : -1;
  int e;
  const double mant_d = std::frexp(r, &e);
  const auto mant = static_cast<std::uint64_t>(std::ldexp(mant_d, 53));  // exact 53-bit integer
  const int e2 = e - 53;
  unsigned __int128 lhs = static_cast<unsigned __int128>(card) * mant;
  if (e2 >= 0) {
    if (e2 >= 64) return 1;  // lhs >= 1, so lhs << e2 exceeds any uint64 target
    if (static_cast<unsigned __int128>(lhs >> (128 - e2)) != 0) return 1;
    lhs <<= e2;
    return lhs < target ? -1 : lhs > target ? 1 : 0;
  }
  const int sh = -e2;
  if (target == 0) return 1;
  if (sh >= 128 || (sh > 64 && (target >> (128 - sh)) != 0)) return -1;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(target) << sh;
  return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

CubePartition partition(const PrimeField& f, const HilbertCube& c, double big_r) {
  check_cube(f, c);
  FpSet h = expand(f, c);
  const std::uint64_t total = h.card();
  if (!std::isfinite(big_r) || big_r < 2.0 || 2.0 * big_r > static_cast<double>(total))
    throw RangeError("partition parameter must lie in [2, H/2]");

  // Smallest i with #H_i >= H/R, i.e. #H_i * R >= H. i >= 1 because R < H.
  FpSet u(f.p());
  u.insert(c.a0);
  std::size_t i = 0;
  std::vector<std::uint64_t> scratch(u.words().size());
  while (compare_scaled(u.card(), big_r, total) < 0) {
    std::copy(u.words().begin(), u.words().end(), scratch.begin());
    kern::rotate_or(u.mutable_words().data(), scratch.data(), c.gens[i], f.p());
    u.recount();
    ++i;
  }

  HilbertCube rest{0, std::vector<std::uint32_t>(c.gens.begin() + static_cast<std::ptrdiff_t>(i),
                                                 c.gens.end())};
  FpSet v = expand(f, rest);
  return {std::move(u), std::move(v), i, big_r};
}

CubeEnumerator::CubeEnumerator(std::uint32_t p, std::size_t d, ResidueRange a0_range,
                               ResidueRange gen_range)
    : d_(d), a0_range_(a0_range), gen_range_(gen_range) {
  if (d > max_cube_dim) throw DimensionTooLarge("cube dimension capped at 30");
  if (a0_range.hi >= p || gen_range.hi >= p) throw RangeError("range endpoint out of range");
  const std::uint64_t a0n = a0_range.size();
  const std::uint64_t gn = gen_range.size();
  // Budget on the raw (pre-canonicalization) count.
  std::uint64_t raw = a0n;
  for (std::size_t k = 0; k < d && raw <= max_total; ++k) {
    if (gn != 0 && raw > max_total / gn) {
      raw = max_total + 1;
      break;
    }
    raw *= gn;
  }
  if (raw > max_total) throw EnumerationTooLarge("enumeration budget exceeded");
  if (a0n == 0 || (d > 0 && gn == 0)) {
    total_ = 0;
    done_ = true;
    return;
  }
  // Nondecreasing d-tuples from gn values: C(gn + d - 1, d).
  std::uint64_t canon = 1;
  for (std::uint64_t k = 1; k <= d; ++k) canon = canon * (gn + k - 1) / k;
  total_ = a0n * canon;
}

std::optional<HilbertCube> CubeEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    cur_.a0 = a0_range_.lo;
    cur_.gens.assign(d_, gen_range_.lo);
    return cur_;
  }
  // Odometer over nondecreasing generator tuples, then over a0.
  std::size_t j = d_;
  while (j > 0) {
    --j;
    if (cur_.gens[j] < gen_range_.hi) {
      const std::uint32_t v = cur_.gens[j] + 1;
      for (std::size_t k = j; k < d_; ++k) cur_.gens[k] = v;
      return cur_;
    }
  }
  if (cur_.a0 < a0_range_.hi) {
    ++cur_.a0;
    cur_.gens.assign(d_, gen_range_.lo);
    return cur_;
  }
  done_ = true;
  return std::nullopt;
}

}  // namespace hc

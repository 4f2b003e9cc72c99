#include <algorithm>
#include <set>

#include "doctest.h"
#include "hc/cube.hpp"
#include "hc/rng.hpp"
#include "hc/setalg.hpp"

using namespace hc;

namespace {

// independent oracle: enumerate all 2^d subset sums directly
FpSet naive_expand(std::uint32_t p, const HilbertCube& c) {
  FpSet out(p);
  const std::size_t d = c.gens.size();
  for (std::uint64_t mask = 0; mask < (1ull << d); ++mask) {
    std::uint64_t s = c.a0;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) s += c.gens[i];
    out.insert(static_cast<std::uint32_t>(s % p));
  }
  return out;
}

}  // namespace

TEST_CASE("expansion examples") {
  const PrimeField f7(7);
  CHECK(expand(f7, {0, {1, 2}}) == FpSet(7, {0, 1, 2, 3}));
  CHECK(expand(f7, {0, {1, 1}}) == FpSet(7, {0, 1, 2}));

  const PrimeField f101(101);
  const HilbertCube c{0, {1, 2, 4, 8}};
  const FpSet h = expand(f101, c);
  CHECK(h == naive_expand(101, c));
  CHECK(h.card() == 16);
  for (std::uint32_t x = 0; x < 16; ++x) CHECK(h.contains(x));
}

TEST_CASE("expansion equals the subset-sum oracle on random cubes") {
  SplitMix64 rng(5);
  for (const std::uint32_t p : {7u, 31u, 101u, 1009u}) {
    const PrimeField f(p);
    for (int t = 0; t < 30; ++t) {
      HilbertCube c;
      c.a0 = static_cast<std::uint32_t>(rng.below(p));
      const auto d = static_cast<std::size_t>(rng.below(11));
      for (std::size_t i = 0; i < d; ++i)
        c.gens.push_back(static_cast<std::uint32_t>(rng.below(p)));
      REQUIRE(expand(f, c) == naive_expand(p, c));
    }
  }
}

TEST_CASE("expansion is order-invariant and translates") {
  SplitMix64 rng(6);
  const PrimeField f(101);
  for (int t = 0; t < 20; ++t) {
    HilbertCube c;
    c.a0 = static_cast<std::uint32_t>(rng.below(101));
    for (int i = 0; i < 8; ++i) c.gens.push_back(static_cast<std::uint32_t>(rng.below(101)));
    const FpSet h = expand(f, c);

    HilbertCube shuffled = c;
    std::reverse(shuffled.gens.begin(), shuffled.gens.end());
    CHECK(expand(f, shuffled) == h);

    HilbertCube zero = c;
    zero.a0 = 0;
    CHECK(expand(f, zero).rotated(c.a0) == h);
  }
}

TEST_CASE("dimension cap") {
  const PrimeField f(101);
  HilbertCube c{0, std::vector<std::uint32_t>(31, 1)};
  CHECK_THROWS_AS(expand(f, c), DimensionTooLarge);
}

TEST_CASE("prefix cardinalities") {
  const PrimeField f101(101);
  CHECK(prefix_cardinalities(f101, {0, {1, 2, 4, 8}}) ==
        std::vector<std::uint32_t>{1, 2, 4, 8, 16});
  const PrimeField f7(7);
  CHECK(prefix_cardinalities(f7, {0, {1, 1}}) == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(prefix_cardinalities(f7, {3, {}}) == std::vector<std::uint32_t>{1});
  // nondecreasing, at most doubling
  SplitMix64 rng(8);
  for (int t = 0; t < 20; ++t) {
    HilbertCube c{static_cast<std::uint32_t>(rng.below(101)), {}};
    for (int i = 0; i < 10; ++i) c.gens.push_back(static_cast<std::uint32_t>(rng.below(101)));
    const auto cards = prefix_cardinalities(f101, c);
    REQUIRE(cards.size() == 11);
    CHECK(cards[0] == 1);
    for (std::size_t i = 1; i < cards.size(); ++i) {
      CHECK(cards[i] >= cards[i - 1]);
      CHECK(cards[i] <= 2 * cards[i - 1]);
    }
  }
}

TEST_CASE("compare_scaled is exact") {
  CHECK(compare_scaled(4, 4.0, 16) == 0);
  CHECK(compare_scaled(3, 4.0, 13) < 0);
  CHECK(compare_scaled(4, 4.0, 15) > 0);
  CHECK(compare_scaled(1, 2.0, 2) == 0);
  CHECK(compare_scaled(1u << 30, 0.125, 1u << 27) == 0);
  CHECK(compare_scaled(0, 2.0, 1) < 0);
  CHECK(compare_scaled(0, 2.0, 0) == 0);
  // 0.1 is not exactly 1/10; the comparison respects the double's true value
  CHECK(compare_scaled(10, 0.1, 1) != 0);
  CHECK_THROWS_AS(compare_scaled(1, 0.0, 1), RangeError);
}

TEST_CASE("partition follows the constructive proof") {
  const PrimeField f(101);
  const HilbertCube c{0, {1, 2, 4, 8}};

  const CubePartition p4 = partition(f, c, 4.0);
  CHECK(p4.split_index == 2);
  CHECK(p4.u == FpSet(101, {0, 1, 2, 3}));
  CHECK(p4.v == FpSet(101, {0, 4, 8, 12}));
  CHECK(sumset(p4.u, p4.v) == expand(f, c));

  const CubePartition p2 = partition(f, c, 2.0);
  CHECK(p2.u.card() >= 8);
  CHECK(p2.v.card() >= 1);
  CHECK(sumset(p2.u, p2.v) == expand(f, c));

  // R = H/2 is the upper boundary and still legal
  const CubePartition p8 = partition(f, c, 8.0);
  CHECK(p8.split_index == 1);
  CHECK(p8.u == FpSet(101, {0, 1}));
  CHECK(p8.v.card() == 8);
  CHECK(sumset(p8.u, p8.v) == expand(f, c));

  const PrimeField f7(7);
  CHECK_THROWS_AS(partition(f7, {0, {1}}, 3.0), RangeError);
  CHECK_THROWS_AS(partition(f, c, 1.5), RangeError);
  CHECK_THROWS_AS(partition(f, c, 9.0), RangeError);  // H/2 = 8
}

TEST_CASE("partition invariants over random cubes and R grid") {
  const PrimeField f(1009);
  SplitMix64 rng(9);
  int checked = 0;
  for (int t = 0; t < 120; ++t) {
    HilbertCube c;
    FpSet h;
    do {
      c.a0 = static_cast<std::uint32_t>(rng.below(1009));
      c.gens.clear();
      const auto d = static_cast<std::size_t>(1 + rng.below(12));
      for (std::size_t i = 0; i < d; ++i)
        c.gens.push_back(static_cast<std::uint32_t>(rng.below(1009)));
      h = expand(f, c);
    } while (h.card() < 4);
    const double total = h.card();
    for (const double r : {2.0, 4.0, std::sqrt(total), total / 4.0, total / 2.0}) {
      if (!(r >= 2.0 && 2.0 * r <= total)) continue;
      const CubePartition part = partition(f, c, r);
      REQUIRE(sumset(part.u, part.v) == h);
      REQUIRE(compare_scaled(part.u.card(), r, h.card()) >= 0);   // #U >= H/R
      REQUIRE(compare_scaled(part.u.card(), r, 2 * h.card()) < 0);  // #U < 2H/R
      REQUIRE(2.0 * part.v.card() >= r);                          // #V >= R/2
      REQUIRE(static_cast<std::uint64_t>(part.u.card()) * part.v.card() >= h.card());
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("cube enumeration counts and canonical form") {
  CubeEnumerator e1(5, 1, {0, 4}, {1, 4});
  CHECK(e1.total() == 20);
  std::size_t n = 0;
  while (auto c = e1.next()) {
    ++n;
    CHECK(c->gens.size() == 1);
  }
  CHECK(n == 20);

  CubeEnumerator e2(5, 2, {0, 0}, {1, 4});
  CHECK(e2.total() == 10);
  std::vector<HilbertCube> cubes;
  while (auto c = e2.next()) cubes.push_back(*c);
  CHECK(cubes.size() == 10);
  for (const auto& c : cubes) {
    CHECK(c.a0 == 0);
    REQUIRE(c.gens.size() == 2);
    CHECK(c.gens[0] <= c.gens[1]);
  }
  // lexicographic and duplicate-free
  for (std::size_t i = 1; i < cubes.size(); ++i)
    CHECK(cubes[i - 1].gens < cubes[i].gens);

  CHECK_THROWS_AS(CubeEnumerator(1009, 5, {0, 1008}, {1, 1008}), EnumerationTooLarge);

  // p = 31, d = 5 over everything stays just inside the raw budget
  CubeEnumerator e3(31, 5, {0, 30}, {1, 30});
  CHECK(e3.total() == 31ull * 278256);  // 31 * C(34,5) canonical cubes
}

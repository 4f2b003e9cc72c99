#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "hc/kernels.hpp"
#include "hc/rng.hpp"

using namespace hc;
using kern::Backend;
using cplx = std::complex<double>;

namespace {

std::vector<std::uint64_t> random_words(SplitMix64& rng, std::size_t nw) {
  std::vector<std::uint64_t> w(nw);
  for (auto& x : w) x = rng.next();
  return w;
}

std::vector<cplx> random_roots(SplitMix64& rng, std::size_t n) {
  std::vector<cplx> r(n);
  for (auto& x : r) x = {rng.unit() * 2 - 1, rng.unit() * 2 - 1};
  return r;
}

}  // namespace

TEST_CASE("rotate_or matches per-element rotation") {
  SplitMix64 rng(42);
  for (const std::uint32_t nbits : {7u, 63u, 64u, 65u, 101u, 1009u, 4096u}) {
    const std::size_t nw = (nbits + 63) / 64;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::uint64_t> src(nw, 0);
      std::vector<bool> member(nbits);
      for (std::uint32_t i = 0; i < nbits; ++i) {
        if (rng.below(3) == 0) {
          src[i / 64] |= 1ull << (i % 64);
          member[i] = true;
        }
      }
      // random shift plus every word-boundary suspect
      std::vector<std::uint32_t> shifts{static_cast<std::uint32_t>(rng.below(nbits)), 0, 1,
                                        nbits - 1};
      for (const std::uint32_t s : {63u, 64u, 65u})
        if (s < nbits) shifts.push_back(s);
      for (const std::uint32_t shift : shifts) {
        std::vector<std::uint64_t> dst(nw, 0);
        kern::rotate_or(dst.data(), src.data(), shift, nbits);
        std::vector<std::uint64_t> expect(nw, 0);
        for (std::uint32_t i = 0; i < nbits; ++i) {
          if (!member[i]) continue;
          const std::uint32_t j = (i + shift) % nbits;
          expect[j / 64] |= 1ull << (j % 64);
        }
        REQUIRE(dst == expect);
      }
    }
  }
}

TEST_CASE("rotate_or accumulates into existing bits") {
  std::vector<std::uint64_t> dst{0b101};
  const std::vector<std::uint64_t> src{0b1};
  kern::rotate_or(dst.data(), src.data(), 1, 7);
  CHECK(dst[0] == 0b111);
}

#if defined(HC_HAVE_AVX2)

TEST_CASE("avx2 bit kernels match scalar bit for bit") {
  if (!kern::avx2_supported()) return;
  SplitMix64 rng(7);
  for (const std::size_t nw : {1u, 3u, 4u, 5u, 17u, 64u, 129u}) {
    const auto a = random_words(rng, nw);
    const auto b = random_words(rng, nw);
    std::vector<std::uint64_t> s(nw), v(nw);

    kern::detail::bit_or_scalar(s.data(), a.data(), b.data(), nw);
    kern::detail::bit_or_avx2(v.data(), a.data(), b.data(), nw);
    CHECK(s == v);

    kern::detail::bit_and_scalar(s.data(), a.data(), b.data(), nw);
    kern::detail::bit_and_avx2(v.data(), a.data(), b.data(), nw);
    CHECK(s == v);

    kern::detail::bit_andnot_scalar(s.data(), a.data(), b.data(), nw);
    kern::detail::bit_andnot_avx2(v.data(), a.data(), b.data(), nw);
    CHECK(s == v);

    CHECK(kern::detail::popcount_scalar(a.data(), nw) ==
          kern::detail::popcount_avx2(a.data(), nw));
    CHECK(kern::detail::intersects_scalar(a.data(), b.data(), nw) ==
          kern::detail::intersects_avx2(a.data(), b.data(), nw));
  }
}

TEST_CASE("avx2 advance_mod matches scalar") {
  if (!kern::avx2_supported()) return;
  SplitMix64 rng(11);
  for (const std::size_t n : {1u, 7u, 8u, 9u, 100u, 1009u}) {
    const std::uint32_t m = 1009;
    std::vector<std::uint32_t> idx_s(n), idx_v(n), step(n);
    for (std::size_t i = 0; i < n; ++i) {
      idx_s[i] = idx_v[i] = static_cast<std::uint32_t>(rng.below(m));
      step[i] = static_cast<std::uint32_t>(rng.below(m));
    }
    for (int round = 0; round < 5; ++round) {
      kern::detail::advance_mod_scalar(idx_s.data(), step.data(), n, m);
      kern::detail::advance_mod_avx2(idx_v.data(), step.data(), n, m);
      REQUIRE(idx_s == idx_v);
    }
  }
}

TEST_CASE("avx2 complex kernels are bit-identical to the scalar contract") {
  if (!kern::avx2_supported()) return;
  SplitMix64 rng(13);
  for (const std::uint32_t m : {5u, 101u, 1008u, 1013u}) {
    const auto roots = random_roots(rng, m);
    for (const std::size_t n : {0u, 1u, 3u, 4u, 5u, 101u, 1000u}) {
      std::vector<std::uint32_t> w(std::max<std::size_t>(m, n)), perm(n), idx(n);
      for (auto& x : w) x = static_cast<std::uint32_t>(rng.below(1 << 20));
      for (auto& x : perm) x = static_cast<std::uint32_t>(rng.below(m));
      for (auto& x : idx) x = static_cast<std::uint32_t>(rng.below(m));
      const auto step = static_cast<std::uint32_t>(rng.below(m));

      const cplx ps =
          kern::detail::weighted_progression_sum_scalar(w.data(), perm.data(), roots.data(), m,
                                                        step, n);
      const cplx pv = kern::detail::weighted_progression_sum_avx2(w.data(), perm.data(),
                                                                  roots.data(), m, step, n);
      CHECK(ps.real() == pv.real());
      CHECK(ps.imag() == pv.imag());

      const cplx gs = kern::detail::weighted_gather_sum_scalar(w.data(), idx.data(), roots.data(),
                                                               n);
      const cplx gv = kern::detail::weighted_gather_sum_avx2(w.data(), idx.data(), roots.data(),
                                                             n);
      CHECK(gs.real() == gv.real());
      CHECK(gs.imag() == gv.imag());
    }
  }
}

TEST_CASE("backend selection is runtime switchable") {
  if (!kern::avx2_supported()) return;
  kern::set_backend(Backend::Scalar);
  CHECK(kern::active_backend() == Backend::Scalar);
  kern::set_backend(Backend::Avx2);
  CHECK(kern::active_backend() == Backend::Avx2);
  kern::reset_backend();
  const char* env = std::getenv("HC_BACKEND");
  const Backend probed = env && std::string(env) == "scalar" ? Backend::Scalar : Backend::Avx2;
  CHECK(kern::active_backend() == probed);
}

#endif  // HC_HAVE_AVX2

TEST_CASE("progression sum with unit weights sums roots along the orbit") {
  // step = 0 keeps hitting roots[0]; weights of one make the sum n * roots[0].
  std::vector<std::uint32_t> w(8, 1), perm(8);
  for (std::size_t i = 0; i < 8; ++i) perm[i] = static_cast<std::uint32_t>(i);
  std::vector<cplx> roots(8, cplx{0.25, -0.5});
  const cplx s = kern::weighted_progression_sum(w.data(), perm.data(), roots.data(), 8, 0, 8);
  CHECK(s.real() == doctest::Approx(2.0));
  CHECK(s.imag() == doctest::Approx(-4.0));
}

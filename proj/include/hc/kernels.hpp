#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Inner-loop kernels behind the set algebra and the sum evaluators. Every
// kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. All variants return bit-identical results.
//
// The complex-accumulation kernels follow a fixed contract so the vector
// variants are reproducible in scalar code: term k is added into partial sum
// k mod 4, each term is rounded once as w*re and once as w*im (no FMA), and
// the four partials are combined as (s0 + s1) + (s2 + s3). Index tables must
// stay below 2^26 entries so 4-byte gather offsets cannot overflow.

namespace hc::kern {

enum class Backend { Scalar, Avx2 };

bool avx2_supported();
void set_backend(Backend b);  // throws hc::RangeError if unsupported
void reset_backend();         // re-probe CPU; honours HC_BACKEND=scalar
Backend active_backend();

// ---- 64-bit block ops (nw = word count). dst may alias a or b. ----

void bit_or(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t nw);
void bit_and(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t nw);
void bit_andnot(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t nw);
std::uint64_t popcount(const std::uint64_t* a, std::size_t nw);
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nw);

// dst |= src rotated by `shift` within an nbits-bit ring, i.e. bit
// ((i + shift) mod nbits) of dst picks up bit i of src. src must be canonical
// (no bits at positions >= nbits) and dst != src. Word-parallel scalar code;
// not part of the SIMD dispatch surface.
void rotate_or(std::uint64_t* dst, const std::uint64_t* src, std::uint32_t shift,
               std::uint32_t nbits);

// ---- index/count ops ----

// idx[i] = idx[i] + step[i] - (m if that reaches m). All values in [0, m),
// m < 2^31.
void advance_mod(std::uint32_t* idx, const std::uint32_t* step, std::size_t n, std::uint32_t m);

// ---- complex accumulation (see contract above) ----

// sum over k < n of w[perm[k]] * roots[(k*step) mod m].
std::complex<double> weighted_progression_sum(const std::uint32_t* w, const std::uint32_t* perm,
                                              const std::complex<double>* roots, std::uint32_t m,
                                              std::uint32_t step, std::size_t n);

// sum over k < n of w[k] * roots[idx[k]].
std::complex<double> weighted_gather_sum(const std::uint32_t* w, const std::uint32_t* idx,
                                         const std::complex<double>* roots, std::size_t n);

namespace detail {

void bit_or_scalar(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
void bit_and_scalar(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
void bit_andnot_scalar(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
std::uint64_t popcount_scalar(const std::uint64_t*, std::size_t);
bool intersects_scalar(const std::uint64_t*, const std::uint64_t*, std::size_t);
void advance_mod_scalar(std::uint32_t*, const std::uint32_t*, std::size_t, std::uint32_t);
std::complex<double> weighted_progression_sum_scalar(const std::uint32_t*, const std::uint32_t*,
                                                     const std::complex<double>*, std::uint32_t,
                                                     std::uint32_t, std::size_t);
std::complex<double> weighted_gather_sum_scalar(const std::uint32_t*, const std::uint32_t*,
                                                const std::complex<double>*, std::size_t);

#if defined(HC_HAVE_AVX2)
void bit_or_avx2(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
void bit_and_avx2(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
void bit_andnot_avx2(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
std::uint64_t popcount_avx2(const std::uint64_t*, std::size_t);
bool intersects_avx2(const std::uint64_t*, const std::uint64_t*, std::size_t);
void advance_mod_avx2(std::uint32_t*, const std::uint32_t*, std::size_t, std::uint32_t);
std::complex<double> weighted_progression_sum_avx2(const std::uint32_t*, const std::uint32_t*,
                                                   const std::complex<double>*, std::uint32_t,
                                                   std::uint32_t, std::size_t);
std::complex<double> weighted_gather_sum_avx2(const std::uint32_t*, const std::uint32_t*,
                                              const std::complex<double>*, std::size_t);
#endif

}  // namespace detail

}  // namespace hc::kern

#include "hc/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "hc/error.hpp"

namespace hc::kern {

namespace {

Backend probe() {
#if defined(HC_HAVE_AVX2)
  if (const char* env = std::getenv("HC_BACKEND"); env && std::strcmp(env, "scalar") == 0)
    return Backend::Scalar;
  if (avx2_supported()) return Backend::Avx2;
#endif
  return Backend::Scalar;
}

std::atomic<Backend> g_backend{probe()};

}  // namespace

bool avx2_supported() {
#if defined(HC_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_supported())
    throw RangeError("avx2 backend not available on this machine");
  g_backend.store(b, std::memory_order_relaxed);
}

void reset_backend() { g_backend.store(probe(), std::memory_order_relaxed); }

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

namespace detail {

void bit_or_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                   std::size_t nw) {
  for (std::size_t i = 0; i < nw; ++i) dst[i] = a[i] | b[i];
}

void bit_and_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                    std::size_t nw) {
  for (std::size_t i = 0; i < nw; ++i) dst[i] = a[i] & b[i];
}

void bit_andnot_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                       std::size_t nw) {
  for (std::size_t i = 0; i < nw; ++i) dst[i] = a[i] & ~b[i];
}

std::uint64_t popcount_scalar(const std::uint64_t* a, std::size_t nw) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < nw; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
  return c;
}

bool intersects_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t nw) {
  for (std::size_t i = 0; i < nw; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

void advance_mod_scalar(std::uint32_t* idx, const std::uint32_t* step, std::size_t n,
                        std::uint32_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t v = idx[i] + step[i];
    idx[i] = v >= m ? v - m : v;
  }
}

std::complex<double> weighted_progression_sum_scalar(const std::uint32_t* w,
                                                     const std::uint32_t* perm,
                                                     const std::complex<double>* roots,
                                                     std::uint32_t m, std::uint32_t step,
                                                     std::size_t n) {
  double re[4] = {0, 0, 0, 0};
  double im[4] = {0, 0, 0, 0};
  const double* rt = reinterpret_cast<const double*>(roots);
  std::uint32_t idx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double wk = static_cast<double>(w[perm[k]]);
    const std::size_t lane = k & 3;
    re[lane] += wk * rt[2 * idx];
    im[lane] += wk * rt[2 * idx + 1];
    idx += step;
    if (idx >= m) idx -= m;
  }
  return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

std::complex<double> weighted_gather_sum_scalar(const std::uint32_t* w, const std::uint32_t* idx,
                                                const std::complex<double>* roots, std::size_t n) {
  double re[4] = {0, 0, 0, 0};
  double im[4] = {0, 0, 0, 0};
  const double* rt = reinterpret_cast<const double*>(roots);
  for (std::size_t k = 0; k < n; ++k) {
    const double wk = static_cast<double>(w[k]);
    const std::size_t lane = k & 3;
    re[lane] += wk * rt[2 * idx[k]];
    im[lane] += wk * rt[2 * idx[k] + 1];
  }
  return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

}  // namespace detail

#if defined(HC_HAVE_AVX2)
#define HC_DISPATCH(fn, ...)                                                      \
  (active_backend() == Backend::Avx2 ? detail::fn##_avx2(__VA_ARGS__)             \
                                     : detail::fn##_scalar(__VA_ARGS__))
#else
#define HC_DISPATCH(fn, ...) detail::fn##_scalar(__VA_ARGS__)
#endif

void bit_or(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t nw) {
  HC_DISPATCH(bit_or, dst, a, b, nw);
}

void bit_and(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t nw) {
  HC_DISPATCH(bit_and, dst, a, b, nw);
}

void bit_andnot(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                std::size_t nw) {
  HC_DISPATCH(bit_andnot, dst, a, b, nw);
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t nw) {
  return HC_DISPATCH(popcount, a, nw);
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nw) {
  return HC_DISPATCH(intersects, a, b, nw);
}

void advance_mod(std::uint32_t* idx, const std::uint32_t* step, std::size_t n, std::uint32_t m) {
  HC_DISPATCH(advance_mod, idx, step, n, m);
}

std::complex<double> weighted_progression_sum(const std::uint32_t* w, const std::uint32_t* perm,
                                              const std::complex<double>* roots, std::uint32_t m,
                                              std::uint32_t step, std::size_t n) {
  return HC_DISPATCH(weighted_progression_sum, w, perm, roots, m, step, n);
}

std::complex<double> weighted_gather_sum(const std::uint32_t* w, const std::uint32_t* idx,
                                         const std::complex<double>* roots, std::size_t n) {
  return HC_DISPATCH(weighted_gather_sum, w, idx, roots, n);
}

#undef HC_DISPATCH

void rotate_or(std::uint64_t* dst, const std::uint64_t* src, std::uint32_t shift,
               std::uint32_t nbits) {
  const std::size_t nw = (nbits + 63) / 64;
  shift %= nbits;
  const std::uint32_t tail = nbits % 64;
  const std::uint64_t tail_mask = tail ? (~0ull >> (64 - tail)) : ~0ull;
  if (shift == 0) {
    bit_or(dst, dst, src, nw);
    return;
  }

  // Bits i with i + shift < nbits land via (src << shift).
  const std::size_t ws = shift / 64;
  const std::uint32_t bs = shift % 64;
  for (std::size_t w = ws; w < nw; ++w) {
    std::uint64_t v = src[w - ws] << bs;
    if (bs && w > ws) v |= src[w - ws - 1] >> (64 - bs);
    if (w == nw - 1) v &= tail_mask;
    dst[w] |= v;
  }

  // The wrapped bits: result bit j < shift picks up src bit j + (nbits - shift).
  const std::uint32_t t = nbits - shift;
  const std::size_t ws2 = t / 64;
  const std::uint32_t bs2 = t % 64;
  for (std::size_t w = 0; w * 64 < shift; ++w) {
    std::uint64_t v = src[w + ws2] >> bs2;
    if (bs2 && w + ws2 + 1 < nw) v |= src[w + ws2 + 1] << (64 - bs2);
    const std::uint32_t remaining = shift - static_cast<std::uint32_t>(w * 64);
    if (remaining < 64) v &= (1ull << remaining) - 1;
    dst[w] |= v;
  }
}

}  // namespace hc::kern

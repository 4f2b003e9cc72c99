// AVX2 kernel variants. Compiled with -mavx2 in its own translation unit and
// reached only through the runtime dispatch in kernels.cpp. Each function
// reproduces the scalar reference bit for bit: same lane striping (term k into
// partial k mod 4), same single rounding per product, same final combine.

#include "hc/kernels.hpp"

#if defined(HC_HAVE_AVX2)

#include <immintrin.h>

namespace hc::kern::detail {

void bit_or_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                 std::size_t nw) {
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(va, vb));
  }
  for (; i < nw; ++i) dst[i] = a[i] | b[i];
}

void bit_and_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                  std::size_t nw) {
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(va, vb));
  }
  for (; i < nw; ++i) dst[i] = a[i] & b[i];
}

void bit_andnot_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                     std::size_t nw) {
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // andnot computes ~first & second
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_andnot_si256(vb, va));
  }
  for (; i < nw; ++i) dst[i] = a[i] & ~b[i];
}

std::uint64_t popcount_avx2(const std::uint64_t* a, std::size_t nw) {
  const __m256i lookup =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1,
                       2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low_mask);
    __m256i cnt =
        _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < nw; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
  return total;
}

bool intersects_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t nw) {
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i v = _mm256_and_si256(va, vb);
    if (!_mm256_testz_si256(v, v)) return true;
  }
  for (; i < nw; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

void advance_mod_avx2(std::uint32_t* idx, const std::uint32_t* step, std::size_t n,
                      std::uint32_t m) {
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
  const __m256i vm1 = _mm256_set1_epi32(static_cast<int>(m - 1));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i vi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + i));
    __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(step + i));
    __m256i sum = _mm256_add_epi32(vi, vs);
    __m256i ge = _mm256_cmpgt_epi32(sum, vm1);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(idx + i),
                        _mm256_sub_epi32(sum, _mm256_and_si256(ge, vm)));
  }
  for (; i < n; ++i) {
    std::uint32_t v = idx[i] + step[i];
    idx[i] = v >= m ? v - m : v;
  }
}

std::complex<double> weighted_progression_sum_avx2(const std::uint32_t* w,
                                                   const std::uint32_t* perm,
                                                   const std::complex<double>* roots,
                                                   std::uint32_t m, std::uint32_t step,
                                                   std::size_t n) {
  const double* rt = reinterpret_cast<const double*>(roots);
  const std::uint32_t step4 = static_cast<std::uint32_t>((4ull * step) % m);
  __m128i vidx = _mm_setr_epi32(0, static_cast<int>(step % m),
                                static_cast<int>((2ull * step) % m),
                                static_cast<int>((3ull * step) % m));
  const __m128i vstep = _mm_set1_epi32(static_cast<int>(step4));
  const __m128i vm = _mm_set1_epi32(static_cast<int>(m));
  const __m128i vm1 = _mm_set1_epi32(static_cast<int>(m - 1));
  __m256d accre = _mm256_setzero_pd();
  __m256d accim = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m128i permv = _mm_loadu_si128(reinterpret_cast<const __m128i*>(perm + k));
    __m128i wv = _mm_i32gather_epi32(reinterpret_cast<const int*>(w), permv, 4);
    __m256d wd = _mm256_cvtepi32_pd(wv);
    __m128i idx2 = _mm_slli_epi32(vidx, 1);
    __m256d rev = _mm256_i32gather_pd(rt, idx2, 8);
    __m256d imv = _mm256_i32gather_pd(rt + 1, idx2, 8);
    accre = _mm256_add_pd(accre, _mm256_mul_pd(wd, rev));
    accim = _mm256_add_pd(accim, _mm256_mul_pd(wd, imv));
    __m128i sum = _mm_add_epi32(vidx, vstep);
    __m128i ge = _mm_cmpgt_epi32(sum, vm1);
    vidx = _mm_sub_epi32(sum, _mm_and_si128(ge, vm));
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, accre);
  _mm256_store_pd(im, accim);
  for (; k < n; ++k) {
    const std::uint32_t idx = static_cast<std::uint32_t>((static_cast<std::uint64_t>(k) * step) % m);
    const double wk = static_cast<double>(w[perm[k]]);
    re[k & 3] += wk * rt[2 * idx];
    im[k & 3] += wk * rt[2 * idx + 1];
  }
  return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

std::complex<double> weighted_gather_sum_avx2(const std::uint32_t* w, const std::uint32_t* idx,
                                              const std::complex<double>* roots, std::size_t n) {
  const double* rt = reinterpret_cast<const double*>(roots);
  __m256d accre = _mm256_setzero_pd();
  __m256d accim = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m128i wv = _mm_loadu_si128(reinterpret_cast<const __m128i*>(w + k));
    __m256d wd = _mm256_cvtepi32_pd(wv);
    __m128i iv = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    __m128i idx2 = _mm_slli_epi32(iv, 1);
    __m256d rev = _mm256_i32gather_pd(rt, idx2, 8);
    __m256d imv = _mm256_i32gather_pd(rt + 1, idx2, 8);
    accre = _mm256_add_pd(accre, _mm256_mul_pd(wd, rev));
    accim = _mm256_add_pd(accim, _mm256_mul_pd(wd, imv));
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, accre);
  _mm256_store_pd(im, accim);
  for (; k < n; ++k) {
    const double wk = static_cast<double>(w[k]);
    re[k & 3] += wk * rt[2 * idx[k]];
    im[k & 3] += wk * rt[2 * idx[k] + 1];
  }
  return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

}  // namespace hc::kern::detail

#endif  // HC_HAVE_AVX2

#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "hc/fpset.hpp"

namespace hc {

using cplx = std::complex<double>;

// Index j of the multiplicative character chi_j, defined on a generator g by
// chi_j(g^k) = exp(2*pi*i*j*k/(p-1)). j = 0 is the principal character.
struct CharacterIndex {
  std::uint32_t j = 0;
  bool principal() const { return j == 0; }
};

struct Subgroup {
  std::uint32_t order = 0;
  std::uint32_t generator = 0;
  FpSet elements;
};

enum class TableMode { Auto, Require, None };

// Arithmetic context for F_p. Construction validates primality, fixes the
// smallest primitive root, and (for p up to table_cap) fills flat pow/dlog/inv
// tables. Root-of-unity tables for character evaluation are built lazily on
// first use. Immutable afterwards and safe to share across threads.
class PrimeField {
 public:
  static constexpr std::uint32_t table_cap = 1u << 26;

  explicit PrimeField(std::uint32_t p, TableMode mode = TableMode::Auto);

  PrimeField(const PrimeField&) = delete;
  PrimeField& operator=(const PrimeField&) = delete;

  std::uint32_t p() const { return p_; }
  std::uint32_t generator() const { return g_; }
  bool has_tables() const { return !pow_.empty(); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + (p_ - b); }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;  // ZeroScalar on a == 0

  // dlog(x): the k with g^k = x. Requires tables.
  std::uint32_t dlog(std::uint32_t x) const;
  std::uint32_t pow_g(std::uint32_t k) const;  // g^k for 0 <= k < p-1

  // chi_j(x); returns 0 for x = 0. Requires tables.
  cplx character(CharacterIndex j, std::uint32_t x) const;
  // e_p(lambda * z) = exp(2*pi*i*lambda*z/p).
  cplx additive_character(std::uint32_t lambda, std::uint32_t z) const;

  // exp(2*pi*i*k/(p-1)) and exp(2*pi*i*k/p), as flat tables for the kernels.
  const std::vector<cplx>& mult_roots() const;
  const std::vector<cplx>& add_roots() const;

  const std::uint32_t* pow_table() const { return pow_.data(); }
  const std::uint32_t* dlog_table() const { return dlog_.data(); }
  const std::uint32_t* inv_table() const { return inv_.data(); }

  Subgroup subgroup_of_order(std::uint32_t t) const;       // NotADivisor
  FpSet coset(const Subgroup& g, std::uint32_t lambda) const;  // ZeroScalar

  void require_tables() const;

  // Deterministic Miller-Rabin, valid for all n < 2^64.
  static bool is_prime(std::uint64_t n);

 private:
  std::uint32_t p_;
  std::uint32_t g_ = 0;
  std::vector<std::uint32_t> pow_;   // g^k, k in [0, p-1); pow_[p-1] unused
  std::vector<std::uint32_t> dlog_;  // inverse permutation of pow_; dlog_[0] unused
  std::vector<std::uint32_t> inv_;   // modular inverses; inv_[0] unused

  mutable std::once_flag mult_roots_once_, add_roots_once_;
  mutable std::vector<cplx> mult_roots_, add_roots_;
};

}  // namespace hc

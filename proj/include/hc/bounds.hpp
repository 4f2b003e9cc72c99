#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "hc/rational.hpp"

namespace hc {

// Symbolic value multiplier * p^exponent with an exact rational multiplier and
// an exponent affine in eps. This is the currency of every bound expression.
struct ExponentExpr {
  EpsAffine exponent;
  Rational multiplier{1};

  ExponentExpr times(const ExponentExpr& o) const;
  ExponentExpr divided_by(const ExponentExpr& o) const;
  // Raises to an exact rational power; the multiplier must be 1 unless the
  // power is a nonnegative integer.
  ExponentExpr power(const Rational& k) const;

  double value_at(double p, double eps = 0.0) const;
  std::string str() const;
};

enum class BoundKind { theorem11, cor12, cor13, hp1, hp2 };

inline constexpr const char* implied_constant_note =
    "up to an unspecified absolute constant";

struct BoundReport {
  BoundKind kind = BoundKind::theorem11;
  std::uint64_t p = 0;  // 0 in symbolic mode
  std::uint64_t card_a = 0, card_b = 0, card_h = 0;
  unsigned r = 0;
  double rhs_value = 0.0;                    // concrete mode only
  std::optional<ExponentExpr> rhs_exponent;  // symbolic mode only
  bool trivial = false;  // rhs >= p (concrete), or constant exponent >= 1
  std::string note = implied_constant_note;
};

// p-exponent of the main bound: 2r + 1/2 + 1/(2r).
Rational theorem_exponent(unsigned r);  // BadR on r = 0

// rhs = p^(2r + 1/2 + 1/(2r)) / (cardA * cardB)^r at concrete sizes.
BoundReport theorem_bound(std::uint32_t p, std::uint64_t card_a, std::uint64_t card_b,
                          unsigned r);

// Same bound with #A#B = p^ab_exponent; the result is the exponent of p.
BoundReport theorem_bound_symbolic(const EpsAffine& ab_exponent, unsigned r);

// Integer r in [1, r_max] minimizing the concrete rhs; ties go to smaller r.
std::pair<unsigned, BoundReport> optimize_r(std::uint32_t p, std::uint64_t card_a,
                                            std::uint64_t card_b, unsigned r_max);

// rhs = p^(19/8) * cardH^(-3/2).
BoundReport cor12_bound(std::uint32_t p, std::uint64_t card_h);
BoundReport cor12_bound_symbolic(const EpsAffine& h_exponent);

// H-exponent at which the cor12 rhs crosses p^1: exactly 11/12.
Rational cor12_triviality_boundary();

struct Cor13Threshold {
  ExponentExpr threshold;           // p^(11/12), up to the constant C
  double value = 0.0;               // p^(11/12) at the given p
  std::uint64_t complement_floor = 0;  // (p+1)/2, the proof's coset-complement bound
};

Cor13Threshold cor13_threshold(std::uint32_t p);

// Triviality analysis of the prior product-set bound
// p^(9/4) (#G)^(1/4) / ((#A)^(1/2 - eta/4) (#B)^(5/8)) with #A <= p and
// #B <= #G = p^g_exponent, g_exponent <= 3/4.
struct Hp1Report {
  Rational eta;
  Rational g_exponent;
  Rational chain_exponent;      // 7/4 - (3/8) g_exponent, the eta-free lower bound
  Rational exponent_with_eta;   // chain_exponent + eta/4 at #A = p
  bool always_trivial = true;   // chain_exponent > 1 for every admissible input
  std::string intermediate;     // the simplified middle expression of the chain
};

Hp1Report hp_bound1_analysis(const Rational& eta, const Rational& g_exponent);

// min of chain_exponent over the admissible grid (eta in (0,1], g-exponent in
// [0, 3/4]); equals 47/32.
Rational hp1_grid_min_exponent();

// Triviality analysis of the prior reciprocal-sum bound 16 p^3 / (#A #B).
struct Hp2Report {
  std::uint64_t p = 0;
  std::uint64_t card_a = 0, card_b = 0;
  double rhs_value = 0.0;
  double floor_16p = 0.0;
  bool half_square_case = false;  // #A#B <= p^2/2, where the rhs is >= 32p
  bool always_trivial = true;     // rhs >= 16p > p for all admissible sizes
};

Hp2Report hp_bound2_analysis(std::uint32_t p, std::uint64_t card_a, std::uint64_t card_b);

}  // namespace hc

#pragma once

#include <cstdint>
#include <vector>

#include "hc/field.hpp"
#include "hc/fpset.hpp"

namespace hc {

// Double sums over set pairs, evaluated through the multiplicity array of
// U + V so the pair work is done once and every character (or lambda) costs a
// single pass over F_p. All evaluators need the field tables (p <= 2^26).

struct SumEvaluation {
  cplx value{0.0, 0.0};
  double abs_value = 0.0;
  std::uint32_t u_card = 0;
  std::uint32_t v_card = 0;
  unsigned r = 2;                       // parameter of the shape bound below
  double bound_karatsuba_shape = 0.0;   // U^{1-1/2r} (V^{1/2} p^{1/2r} + V p^{1/4r})
  double bound_bbs = 0.0;               // sqrt(p U V)
  double ratio_to_shape = 0.0;          // abs_value / shape, 0 for empty sets
};

// U^{1-1/2r} (V^{1/2} p^{1/2r} + V p^{1/4r})
double karatsuba_shape_bound(std::uint32_t p, std::uint64_t card_u, std::uint64_t card_v,
                             unsigned r);

// sum over (u,v) of chi_j(u+v); the chi(0) = 0 convention drops pairs with
// u + v = 0.
SumEvaluation double_char_sum(const PrimeField& f, CharacterIndex j, const FpSet& u,
                              const FpSet& v, unsigned r = 2);

// sum over (u,v), u+v != 0, of e_p(lambda/(u+v)). ZeroLambda on lambda = 0.
SumEvaluation double_recip_exp_sum(const PrimeField& f, std::uint32_t lambda, const FpSet& u,
                                   const FpSet& v, unsigned r = 2);

struct SweepMax {
  double abs_max = 0.0;
  std::uint32_t arg = 0;  // character index j, or lambda
};

// max over non-principal j of |double_char_sum|, and over lambda != 0 of
// |double_recip_exp_sum|.
SweepMax char_sweep_max(const PrimeField& f, const FpSet& u, const FpSet& v);
SweepMax recip_exp_sweep_max(const PrimeField& f, const FpSet& u, const FpSet& v);

struct SolutionCount {
  double value = 0.0;  // full orthogonality expansion
  // chi_0 contribution #A #B #{(u,v): u+v != 0} before the 1/(p-1) factor;
  // for the exponential variant, the lambda = 0 term divided by p.
  double principal_term = 0.0;
  std::int64_t rounded = 0;  // nearest integer to value
};

// Solution count of u + v = a*b through the multiplicative-character
// expansion, normalized by p-1. A and B must avoid 0 and the field needs
// dlog tables. RoundingError if the result strays more than 0.01 from an
// integer.
SolutionCount solution_count_via_characters(const PrimeField& f, const FpSet& a, const FpSet& b,
                                            const FpSet& u, const FpSet& v);

// Solution count of (u+v)^{-1} = a + b (u+v != 0) through additive
// characters, normalized by p. Same rounding policy.
SolutionCount solution_count_via_exponentials(const PrimeField& f, const FpSet& a, const FpSet& b,
                                              const FpSet& u, const FpSet& v);

// sum over all p-1 characters of |sum_{a in A} chi(a)|^2; equals (p-1)*#A.
double mean_square_char(const PrimeField& f, const FpSet& a);

struct CauchyReport {
  double s = 0.0;          // sum over non-principal chi of |S_A(chi)| |S_B(chi)|
  double s_squared = 0.0;
  double rhs = 0.0;        // p^2 #A #B
  bool holds = false;
};

CauchyReport cauchy_bound_check(const PrimeField& f, const FpSet& a, const FpSet& b);

}  // namespace hc

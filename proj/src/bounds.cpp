#include "hc/bounds.hpp"

#include <cmath>

namespace hc {

ExponentExpr ExponentExpr::times(const ExponentExpr& o) const {
  return {exponent + o.exponent, multiplier * o.multiplier};
}

ExponentExpr ExponentExpr::divided_by(const ExponentExpr& o) const {
  return {exponent - o.exponent, multiplier / o.multiplier};
}

ExponentExpr ExponentExpr::power(const Rational& k) const {
  ExponentExpr out;
  out.exponent = {k * exponent.c0, k * exponent.c1};
  if (multiplier == Rational(1)) {
    out.multiplier = Rational(1);
  } else if (k.is_integer() && !k.is_negative()) {
    out.multiplier = multiplier.pow(static_cast<unsigned>(k.num()));
  } else {
    throw RangeError("fractional power of a non-unit multiplier is not rational");
  }
  return out;
}

double ExponentExpr::value_at(double p, double eps) const {
  const double e = exponent.c0.to_double() + exponent.c1.to_double() * eps;
  return multiplier.to_double() * std::pow(p, e);
}

std::string ExponentExpr::str() const {
  std::string out;
  if (multiplier != Rational(1)) out += multiplier.str() + " * ";
  const std::string e = exponent.str();
  if (exponent.is_constant() && exponent.c0.is_integer() && !exponent.c0.is_negative())
    out += "p^" + e;
  else
    out += "p^(" + e + ")";
  return out;
}

Rational theorem_exponent(unsigned r) {
  if (r == 0) throw BadR("r must be a positive integer");
  return Rational(2 * static_cast<long long>(r)) + Rational(1, 2) +
         Rational(1, 2 * static_cast<long long>(r));
}

BoundReport theorem_bound(std::uint32_t p, std::uint64_t card_a, std::uint64_t card_b,
                          unsigned r) {
  if (r == 0) throw BadR("r must be a positive integer");
  if (card_a == 0 || card_b == 0) throw RangeError("set sizes must be positive");
  BoundReport rep;
  rep.kind = BoundKind::theorem11;
  rep.p = p;
  rep.card_a = card_a;
  rep.card_b = card_b;
  rep.r = r;
  const double log_rhs = theorem_exponent(r).to_double() * std::log(static_cast<double>(p)) -
                         static_cast<double>(r) * (std::log(static_cast<double>(card_a)) +
                                                   std::log(static_cast<double>(card_b)));
  rep.rhs_value = std::exp(log_rhs);
  rep.trivial = rep.rhs_value >= static_cast<double>(p);
  return rep;
}

BoundReport theorem_bound_symbolic(const EpsAffine& ab_exponent, unsigned r) {
  BoundReport rep;
  rep.kind = BoundKind::theorem11;
  rep.r = r;
  ExponentExpr e;
  e.exponent = EpsAffine(theorem_exponent(r)) - Rational(static_cast<long long>(r)) * ab_exponent;
  rep.rhs_exponent = e;
  rep.trivial = e.exponent.is_constant() && e.exponent.c0 >= Rational(1);
  return rep;
}

std::pair<unsigned, BoundReport> optimize_r(std::uint32_t p, std::uint64_t card_a,
                                            std::uint64_t card_b, unsigned r_max) {
  if (r_max == 0) throw BadR("r_max must be a positive integer");
  if (card_a == 0 || card_b == 0) throw RangeError("set sizes must be positive");
  const long double logp = std::log(static_cast<long double>(p));
  const long double logab = std::log(static_cast<long double>(card_a)) +
                            std::log(static_cast<long double>(card_b));
  unsigned best_r = 1;
  long double best = 0;
  for (unsigned r = 1; r <= r_max; ++r) {
    const long double lr = theorem_exponent(r).to_double() * logp - r * logab;
    if (r == 1 || lr < best - 1e-12L * std::fabs(best)) {
      best = lr;
      best_r = r;
    }
  }
  return {best_r, theorem_bound(p, card_a, card_b, best_r)};
}

BoundReport cor12_bound(std::uint32_t p, std::uint64_t card_h) {
  if (card_h == 0) throw RangeError("cube cardinality must be positive");
  BoundReport rep;
  rep.kind = BoundKind::cor12;
  rep.p = p;
  rep.card_h = card_h;
  const double log_rhs = (19.0 / 8.0) * std::log(static_cast<double>(p)) -
                         1.5 * std::log(static_cast<double>(card_h));
  rep.rhs_value = std::exp(log_rhs);
  rep.trivial = rep.rhs_value >= static_cast<double>(p);
  return rep;
}

BoundReport cor12_bound_symbolic(const EpsAffine& h_exponent) {
  BoundReport rep;
  rep.kind = BoundKind::cor12;
  ExponentExpr e;
  e.exponent = EpsAffine(Rational(19, 8)) - Rational(3, 2) * h_exponent;
  rep.rhs_exponent = e;
  rep.trivial = e.exponent.is_constant() && e.exponent.c0 >= Rational(1);
  return rep;
}

Rational cor12_triviality_boundary() {
  // Solve 19/8 - (3/2) h = 1.
  return (Rational(19, 8) - Rational(1)) / Rational(3, 2);
}

Cor13Threshold cor13_threshold(std::uint32_t p) {
  Cor13Threshold t;
  t.threshold.exponent = EpsAffine(Rational(11, 12));
  t.value = std::pow(static_cast<double>(p), 11.0 / 12.0);
  t.complement_floor = (static_cast<std::uint64_t>(p) + 1) / 2;
  return t;
}

Hp1Report hp_bound1_analysis(const Rational& eta, const Rational& g_exponent) {
  if (!(eta > Rational(0))) throw BadEta("eta must be positive");
  if (g_exponent.is_negative() || g_exponent > Rational(3, 4))
    throw RangeError("subgroup exponent must lie in [0, 3/4]");
  Hp1Report rep;
  rep.eta = eta;
  rep.g_exponent = g_exponent;
  // Substituting the extremes #A = p and #B = #G = p^gamma and dropping the
  // eta term (which can only raise the value) leaves p^(7/4 - 3 gamma / 8).
  rep.chain_exponent = Rational(7, 4) - Rational(3, 8) * g_exponent;
  rep.exponent_with_eta = rep.chain_exponent + eta / Rational(4);
  rep.always_trivial = rep.chain_exponent > Rational(1);
  rep.intermediate = "p^(9/4) / (p^(1/2) (#G)^(3/8))";
  return rep;
}

Rational hp1_grid_min_exponent() {
  Rational best;
  bool first = true;
  for (int ge = 0; ge <= 75; ++ge) {
    const Rational gamma(ge, 100);
    for (int et = 1; et <= 100; ++et) {
      const Rational e = hp_bound1_analysis(Rational(et, 100), gamma).chain_exponent;
      if (first || e < best) {
        best = e;
        first = false;
      }
    }
  }
  return best;
}

Hp2Report hp_bound2_analysis(std::uint32_t p, std::uint64_t card_a, std::uint64_t card_b) {
  if (card_a == 0 || card_b == 0) throw RangeError("set sizes must be positive");
  if (card_a > p || card_b > p) throw RangeError("set sizes cannot exceed p");
  Hp2Report rep;
  rep.p = p;
  rep.card_a = card_a;
  rep.card_b = card_b;
  const double pd = static_cast<double>(p);
  rep.rhs_value = 16.0 * pd * pd * pd / (static_cast<double>(card_a) * static_cast<double>(card_b));
  rep.floor_16p = 16.0 * pd;
  rep.half_square_case =
      static_cast<double>(card_a) * static_cast<double>(card_b) <= pd * pd / 2.0;
  rep.always_trivial = true;  // 16 p^3 / (#A #B) >= 16p > p whenever #A#B <= p^2
  return rep;
}

}  // namespace hc

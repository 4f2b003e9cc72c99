#include "hc/sums.hpp"

#include <cmath>
#include <cstdio>

#include "hc/kernels.hpp"
#include "hc/setalg.hpp"

namespace hc {

namespace {

void check_set(const PrimeField& f, const FpSet& s) {
  if (s.modulus() != f.p()) throw ModulusMismatch("set modulus differs from field");
}

std::vector<std::uint32_t> dlogs_of(const PrimeField& f, const FpSet& s, const char* what) {
  if (s.contains(0)) throw ContainsZero(what);
  std::vector<std::uint32_t> logs;
  logs.reserve(s.card());
  s.for_each([&](std::uint32_t x) { logs.push_back(f.dlog(x)); });
  return logs;
}

cplx roots_sum(const std::vector<cplx>& roots, const std::vector<std::uint32_t>& idx) {
  cplx s{0.0, 0.0};
  for (const std::uint32_t k : idx) s += roots[k];
  return s;
}

SumEvaluation finish_eval(const PrimeField& f, cplx value, const FpSet& u, const FpSet& v,
                          unsigned r) {
  if (r == 0) throw BadR("shape parameter r must be positive");
  SumEvaluation e;
  e.value = value;
  e.abs_value = std::abs(value);
  e.u_card = u.card();
  e.v_card = v.card();
  e.r = r;
  e.bound_karatsuba_shape = karatsuba_shape_bound(f.p(), e.u_card, e.v_card, r);
  e.bound_bbs = std::sqrt(static_cast<double>(f.p()) * e.u_card * e.v_card);
  e.ratio_to_shape = e.bound_karatsuba_shape > 0 ? e.abs_value / e.bound_karatsuba_shape : 0.0;
  return e;
}

std::int64_t round_or_throw(double value) {
  const double nearest = std::nearbyint(value);
  if (std::abs(value - nearest) > 0.01) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "solution count %.6f is not near an integer", value);
    throw RoundingError(msg);
  }
  return static_cast<std::int64_t>(nearest);
}

}  // namespace

double karatsuba_shape_bound(std::uint32_t p, std::uint64_t card_u, std::uint64_t card_v,
                             unsigned r) {
  if (r == 0) throw BadR("shape parameter r must be positive");
  const double pu = static_cast<double>(p);
  const double u = static_cast<double>(card_u);
  const double v = static_cast<double>(card_v);
  const double rr = static_cast<double>(r);
  return std::pow(u, 1.0 - 1.0 / (2.0 * rr)) *
         (std::sqrt(v) * std::pow(pu, 1.0 / (2.0 * rr)) + v * std::pow(pu, 1.0 / (4.0 * rr)));
}

SumEvaluation double_char_sum(const PrimeField& f, CharacterIndex j, const FpSet& u,
                              const FpSet& v, unsigned r) {
  f.require_tables();
  check_set(f, u);
  check_set(f, v);
  if (j.j >= f.p() - 1) throw RangeError("character index out of range");
  const auto m = sum_multiplicities(u, v);
  const cplx value = kern::weighted_progression_sum(m.data(), f.pow_table(),
                                                    f.mult_roots().data(), f.p() - 1, j.j,
                                                    f.p() - 1);
  return finish_eval(f, value, u, v, r);
}

SumEvaluation double_recip_exp_sum(const PrimeField& f, std::uint32_t lambda, const FpSet& u,
                                   const FpSet& v, unsigned r) {
  f.require_tables();
  check_set(f, u);
  check_set(f, v);
  if (lambda == 0) throw ZeroLambda("lambda must be nonzero");
  if (lambda >= f.p()) throw RangeError("lambda out of range");
  const std::uint32_t p = f.p();
  const auto m = sum_multiplicities(u, v);
  std::vector<std::uint32_t> idx(p - 1);
  for (std::uint32_t t = 1; t < p; ++t)
    idx[t - 1] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(lambda) * f.inv_table()[t] % p);
  const cplx value = kern::weighted_gather_sum(m.data() + 1, idx.data(), f.add_roots().data(),
                                               p - 1);
  return finish_eval(f, value, u, v, r);
}

SweepMax char_sweep_max(const PrimeField& f, const FpSet& u, const FpSet& v) {
  f.require_tables();
  check_set(f, u);
  check_set(f, v);
  const std::uint32_t p = f.p();
  const auto m = sum_multiplicities(u, v);
  const auto& roots = f.mult_roots();
  SweepMax best{0.0, 0};
  for (std::uint32_t j = 1; j < p - 1; ++j) {
    const cplx value =
        kern::weighted_progression_sum(m.data(), f.pow_table(), roots.data(), p - 1, j, p - 1);
    const double a = std::abs(value);
    if (a > best.abs_max) best = {a, j};
  }
  return best;
}

SweepMax recip_exp_sweep_max(const PrimeField& f, const FpSet& u, const FpSet& v) {
  f.require_tables();
  check_set(f, u);
  check_set(f, v);
  const std::uint32_t p = f.p();
  const auto m = sum_multiplicities(u, v);
  const auto& roots = f.add_roots();
  // idx[t-1] tracks lambda * inv(t); advancing by inv(t) steps lambda by one.
  std::vector<std::uint32_t> steps(p - 1), idx(p - 1);
  for (std::uint32_t t = 1; t < p; ++t) steps[t - 1] = f.inv_table()[t];
  idx = steps;  // lambda = 1
  SweepMax best{0.0, 0};
  for (std::uint32_t lambda = 1; lambda < p; ++lambda) {
    const cplx value = kern::weighted_gather_sum(m.data() + 1, idx.data(), roots.data(), p - 1);
    const double a = std::abs(value);
    if (a > best.abs_max) best = {a, lambda};
    kern::advance_mod(idx.data(), steps.data(), p - 1, p);
  }
  return best;
}

SolutionCount solution_count_via_characters(const PrimeField& f, const FpSet& a, const FpSet& b,
                                            const FpSet& u, const FpSet& v) {
  f.require_tables();
  check_set(f, a);
  check_set(f, b);
  check_set(f, u);
  check_set(f, v);
  const std::uint32_t p = f.p();
  const std::uint32_t m_order = p - 1;
  const auto logs_a = dlogs_of(f, a, "solution count requires A subset of F_p^*");
  const auto logs_b = dlogs_of(f, b, "solution count requires B subset of F_p^*");
  const auto m = sum_multiplicities(u, v);
  const auto& roots = f.mult_roots();

  std::vector<std::uint32_t> ia(logs_a.size(), 0), ib(logs_b.size(), 0);
  cplx total{0.0, 0.0};
  double principal = 0.0;
  for (std::uint32_t j = 0; j < m_order; ++j) {
    const cplx sa = roots_sum(roots, ia);
    const cplx sb = roots_sum(roots, ib);
    const cplx t =
        kern::weighted_progression_sum(m.data(), f.pow_table(), roots.data(), m_order, j, m_order);
    const cplx term = std::conj(sa) * std::conj(sb) * t;
    if (j == 0) principal = term.real();
    total += term;
    kern::advance_mod(ia.data(), logs_a.data(), ia.size(), m_order);
    kern::advance_mod(ib.data(), logs_b.data(), ib.size(), m_order);
  }

  SolutionCount out;
  out.value = total.real() / static_cast<double>(m_order);
  out.principal_term = principal;  // the #A #B (UV + O(U)) term, unnormalized
  out.rounded = round_or_throw(out.value);
  return out;
}

SolutionCount solution_count_via_exponentials(const PrimeField& f, const FpSet& a, const FpSet& b,
                                              const FpSet& u, const FpSet& v) {
  f.require_tables();
  check_set(f, a);
  check_set(f, b);
  check_set(f, u);
  check_set(f, v);
  const std::uint32_t p = f.p();
  const auto m = sum_multiplicities(u, v);
  const auto& roots = f.add_roots();

  // e_p(-lambda x) walks by step p - x per unit of lambda.
  auto neg_steps = [&](const FpSet& s) {
    std::vector<std::uint32_t> steps;
    steps.reserve(s.card());
    s.for_each([&](std::uint32_t x) { steps.push_back(x == 0 ? 0 : p - x); });
    return steps;
  };
  const auto steps_a = neg_steps(a);
  const auto steps_b = neg_steps(b);
  std::vector<std::uint32_t> ia(steps_a.size(), 0), ib(steps_b.size(), 0);

  std::vector<std::uint32_t> inv_steps(p - 1), iw(p - 1, 0);
  for (std::uint32_t t = 1; t < p; ++t) inv_steps[t - 1] = f.inv_table()[t];

  cplx total{0.0, 0.0};
  double principal = 0.0;
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    const cplx sa = roots_sum(roots, ia);
    const cplx sb = roots_sum(roots, ib);
    const cplx w = kern::weighted_gather_sum(m.data() + 1, iw.data(), roots.data(), p - 1);
    const cplx term = sa * sb * w;
    if (lambda == 0) principal = term.real();
    total += term;
    kern::advance_mod(ia.data(), steps_a.data(), ia.size(), p);
    kern::advance_mod(ib.data(), steps_b.data(), ib.size(), p);
    kern::advance_mod(iw.data(), inv_steps.data(), iw.size(), p);
  }

  SolutionCount out;
  out.value = total.real() / static_cast<double>(p);
  out.principal_term = principal / static_cast<double>(p);
  out.rounded = round_or_throw(out.value);
  return out;
}

double mean_square_char(const PrimeField& f, const FpSet& a) {
  f.require_tables();
  check_set(f, a);
  const std::uint32_t m_order = f.p() - 1;
  const auto logs = dlogs_of(f, a, "mean square requires A subset of F_p^*");
  const auto& roots = f.mult_roots();
  std::vector<std::uint32_t> ia(logs.size(), 0);
  double total = 0.0;
  for (std::uint32_t j = 0; j < m_order; ++j) {
    const cplx s = roots_sum(roots, ia);
    total += std::norm(s);
    kern::advance_mod(ia.data(), logs.data(), ia.size(), m_order);
  }
  return total;
}

CauchyReport cauchy_bound_check(const PrimeField& f, const FpSet& a, const FpSet& b) {
  f.require_tables();
  check_set(f, a);
  check_set(f, b);
  const std::uint32_t m_order = f.p() - 1;
  const auto logs_a = dlogs_of(f, a, "cauchy check requires A subset of F_p^*");
  const auto logs_b = dlogs_of(f, b, "cauchy check requires B subset of F_p^*");
  const auto& roots = f.mult_roots();
  std::vector<std::uint32_t> ia(logs_a.size(), 0), ib(logs_b.size(), 0);
  double s = 0.0;
  for (std::uint32_t j = 0; j < m_order; ++j) {
    if (j != 0) s += std::abs(roots_sum(roots, ia)) * std::abs(roots_sum(roots, ib));
    kern::advance_mod(ia.data(), logs_a.data(), ia.size(), m_order);
    kern::advance_mod(ib.data(), logs_b.data(), ib.size(), m_order);
  }
  CauchyReport rep;
  rep.s = s;
  rep.s_squared = s * s;
  rep.rhs = static_cast<double>(f.p()) * f.p() * a.card() * b.card();
  rep.holds = rep.s_squared <= rep.rhs * (1.0 + 1e-9);
  return rep;
}

}  // namespace hc

#include "hc/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "hc/parse.hpp"
#include "hc/rng.hpp"
#include "hc/setalg.hpp"
#include "hc/sums.hpp"

namespace hc {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs fn(0..n-1) across `workers` threads. fn(i) must only touch slot i of
// any shared output, which keeps results independent of scheduling.
template <class Fn>
void run_indexed(std::size_t n, unsigned workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto pump = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = std::min<std::size_t>(workers, n);
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w) pool.emplace_back(pump);
  for (auto& t : pool) t.join();
}

FpSet random_set(SplitMix64& rng, std::uint32_t p, std::uint32_t size, bool exclude_zero) {
  const auto elems = sample_residues(rng, p, size, exclude_zero);
  return FpSet::from_elements(p, elems);
}

FpSet random_nonempty_star_set(SplitMix64& rng, std::uint32_t p) {
  const auto size = static_cast<std::uint32_t>(1 + rng.below(p - 1));
  return random_set(rng, p, size, true);
}

HilbertCube random_cube(SplitMix64& rng, std::uint32_t p, std::uint32_t d_max) {
  HilbertCube c;
  c.a0 = static_cast<std::uint32_t>(rng.below(p));
  const auto d = static_cast<std::uint32_t>(1 + rng.below(d_max));
  c.gens.reserve(d);
  for (std::uint32_t i = 0; i < d; ++i)
    c.gens.push_back(static_cast<std::uint32_t>(rng.below(p)));
  return c;
}

// Grows a cube inside `inside` by sampling generators from the difference set
// of the target; gives varied nontrivial witnesses for the coset checks.
HilbertCube random_cube_inside(const PrimeField& f, const FpSet& inside, SplitMix64& rng,
                               std::uint32_t d_max) {
  const auto elems = inside.elements();
  HilbertCube c;
  c.a0 = elems[rng.below(elems.size())];
  FpSet h(f.p());
  h.insert(c.a0);
  const FpSet outside = inside.complemented();
  std::vector<std::uint32_t> diffs;
  for (const auto x : elems)
    for (const auto y : elems)
      if (x != y) diffs.push_back(f.sub(y, x));
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
  while (c.gens.size() < d_max && !diffs.empty()) {
    bool grew = false;
    for (std::size_t tries = 0; tries < diffs.size(); ++tries) {
      const std::uint32_t g = diffs[rng.below(diffs.size())];
      FpSet ext = h | h.rotated(g);
      if (!ext.intersects(outside)) {
        h = std::move(ext);
        c.gens.push_back(g);
        grew = true;
        break;
      }
    }
    if (!grew) break;
  }
  return c;
}

struct CheckCtx {
  const PrimeField& f;
  const ExperimentConfig& cfg;
  std::uint64_t stream_base;

  SplitMix64 stream(std::uint64_t trial) const {
    return SplitMix64::stream(cfg.seed, stream_base + trial);
  }
};

using CheckFn = CheckResult (*)(const CheckCtx&);

// ---- field invariants ----

CheckResult check_orthogonality_characters(const CheckCtx& ctx) {
  CheckResult res{"field.orthogonality_over_characters", true, 0, ""};
  const auto& f = ctx.f;
  const std::uint32_t p = f.p();
  const std::uint32_t m = p - 1;
  const auto& roots = f.mult_roots();
  const double tol = 1e-9 * p;
  // Exhaustive below 4096; deterministic stride sample above.
  const std::uint32_t stride = p <= 4096 ? 1 : p / 2048;
  for (std::uint32_t a = 1; a < p; a += stride) {
    const std::uint32_t la = f.dlog(a);
    cplx s{0.0, 0.0};
    std::uint32_t idx = 0;
    for (std::uint32_t j = 0; j < m; ++j) {
      s += roots[idx];
      idx += la;
      if (idx >= m) idx -= m;
    }
    const cplx expect{a == 1 ? static_cast<double>(m) : 0.0, 0.0};
    ++res.cases;
    if (std::abs(s - expect) > tol) {
      res.pass = false;
      res.details = "a=" + std::to_string(a) + " sum=" + fmt(s.real()) + "+" + fmt(s.imag()) + "i";
      break;
    }
  }
  return res;
}

CheckResult check_orthogonality_elements(const CheckCtx& ctx) {
  CheckResult res{"field.orthogonality_over_elements", true, 0, ""};
  const auto& f = ctx.f;
  const std::uint32_t p = f.p();
  const std::uint32_t m = p - 1;
  const auto& roots = f.mult_roots();
  const double tol = 1e-9 * p;
  const std::uint32_t stride = p <= 4096 ? 1 : p / 2048;
  for (std::uint32_t j = 1; j < m; j += stride) {
    cplx s{0.0, 0.0};
    std::uint32_t idx = 0;
    for (std::uint32_t k = 0; k < m; ++k) {
      s += roots[idx];
      idx += j;
      if (idx >= m) idx -= m;
    }
    ++res.cases;
    if (std::abs(s) > tol) {
      res.pass = false;
      res.details = "j=" + std::to_string(j) + " |sum|=" + fmt(std::abs(s));
      break;
    }
  }
  return res;
}

CheckResult check_orthogonality_additive(const CheckCtx& ctx) {
  CheckResult res{"field.orthogonality_additive", true, 0, ""};
  const auto& f = ctx.f;
  const std::uint32_t p = f.p();
  const auto& roots = f.add_roots();
  const double tol = 1e-9 * p;
  const std::uint32_t stride = p <= 4096 ? 1 : p / 2048;
  for (std::uint32_t z = 0; z < p; z += stride) {
    cplx s{0.0, 0.0};
    std::uint32_t idx = 0;
    for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
      s += roots[idx];
      idx += z;
      if (idx >= p) idx -= p;
    }
    const cplx expect{z == 0 ? static_cast<double>(p) : 0.0, 0.0};
    ++res.cases;
    if (std::abs(s - expect) > tol) {
      res.pass = false;
      res.details = "z=" + std::to_string(z) + " |sum|=" + fmt(std::abs(s));
      break;
    }
  }
  return res;
}

CheckResult check_conjugation(const CheckCtx& ctx) {
  CheckResult res{"field.character_conjugation", true, 0, ""};
  const auto& f = ctx.f;
  const std::uint32_t p = f.p();
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    const CharacterIndex j{static_cast<std::uint32_t>(rng.below(p - 1))};
    const auto x = static_cast<std::uint32_t>(1 + rng.below(p - 1));
    const cplx cx = f.character(j, x);
    const cplx ci = f.character(j, f.inv(x));
    ++res.cases;
    if (std::abs(std::abs(cx) - 1.0) > 1e-12 || std::abs(ci - std::conj(cx)) > 1e-12) {
      res.pass = false;
      res.details = "j=" + std::to_string(j.j) + " x=" + std::to_string(x);
      break;
    }
  }
  return res;
}

CheckResult check_coset_partition(const CheckCtx& ctx) {
  CheckResult res{"field.coset_partition", true, 0, ""};
  const auto& f = ctx.f;
  const std::uint32_t p = f.p();
  for (std::uint32_t t = 1; t < p; ++t) {
    if ((p - 1) % t != 0) continue;
    const Subgroup g = f.subgroup_of_order(t);
    FpSet covered(p);
    std::uint32_t classes = 0;
    for (std::uint32_t c = 0; c < (p - 1) / t; ++c) {
      const FpSet cs = f.coset(g, f.pow_g(c));
      if (cs.intersects(covered)) {
        res.pass = false;
        res.details = "order " + std::to_string(t) + ": cosets overlap";
        return res;
      }
      covered |= cs;
      ++classes;
    }
    ++res.cases;
    if (classes != (p - 1) / t || covered.card() != p - 1) {
      res.pass = false;
      res.details = "order " + std::to_string(t) + " covers " + std::to_string(covered.card());
      return res;
    }
  }
  return res;
}

// ---- cube invariants ----

CheckResult check_expand_order_invariance(const CheckCtx& ctx) {
  CheckResult res{"cube.expand_order_invariance", true, 0, ""};
  const auto& f = ctx.f;
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    HilbertCube c = random_cube(rng, f.p(), std::min(ctx.cfg.d_max, 12u));
    const FpSet h = expand(f, c);
    HilbertCube shuffled = c;
    for (std::size_t i = shuffled.gens.size(); i > 1; --i)
      std::swap(shuffled.gens[i - 1], shuffled.gens[rng.below(i)]);
    ++res.cases;
    if (expand(f, shuffled) != h) {
      res.pass = false;
      res.details = "cube " + format_cube(c);
      break;
    }
  }
  return res;
}

CheckResult check_expand_translation(const CheckCtx& ctx) {
  CheckResult res{"cube.expand_translation", true, 0, ""};
  const auto& f = ctx.f;
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    HilbertCube c = random_cube(rng, f.p(), std::min(ctx.cfg.d_max, 12u));
    HilbertCube zero = c;
    zero.a0 = 0;
    ++res.cases;
    if (expand(f, zero).rotated(c.a0) != expand(f, c)) {
      res.pass = false;
      res.details = "cube " + format_cube(c);
      break;
    }
  }
  return res;
}

CheckResult check_partition_lemma(const CheckCtx& ctx) {
  CheckResult res{"cube.partition_lemma", true, 0, ""};
  const auto& f = ctx.f;
  if (f.p() < 5) {
    // no cube can reach #H >= 4, so [2, H/2] is empty for every cube
    res.details = "skipped: no valid R range below p = 5";
    return res;
  }
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    HilbertCube c;
    FpSet h;
    do {
      c = random_cube(rng, f.p(), ctx.cfg.d_max);
      h = expand(f, c);
    } while (h.card() < 4);
    const auto total = static_cast<double>(h.card());
    const double grid[5] = {2.0, 4.0, std::sqrt(total), total / 4.0, total / 2.0};
    for (const double big_r : grid) {
      if (!(big_r >= 2.0 && 2.0 * big_r <= total)) continue;
      const CubePartition part = partition(f, c, big_r);
      ++res.cases;
      const bool ok = sumset(part.u, part.v) == h &&
                      compare_scaled(part.u.card(), big_r, h.card()) >= 0 &&
                      compare_scaled(part.u.card(), big_r, 2ull * h.card()) < 0 &&
                      2.0 * part.v.card() >= big_r &&
                      static_cast<std::uint64_t>(part.u.card()) * part.v.card() >= h.card();
      if (!ok) {
        res.pass = false;
        res.details = "cube " + format_cube(c) + " R=" + fmt(big_r) +
                      " #U=" + std::to_string(part.u.card()) +
                      " #V=" + std::to_string(part.v.card());
        return res;
      }
    }
  }
  return res;
}

// ---- setalg invariants ----

CheckResult check_disjointness_bridge(const CheckCtx& ctx) {
  CheckResult res{"setalg.disjointness_bridge", true, 0, ""};
  const auto& f = ctx.f;
  const std::uint32_t p = f.p();
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    const FpSet a = random_nonempty_star_set(rng, p);
    const FpSet b = random_nonempty_star_set(rng, p);
    const FpSet u = random_set(rng, p, static_cast<std::uint32_t>(rng.below(p)), false);
    const FpSet v = random_set(rng, p, static_cast<std::uint32_t>(rng.below(p)), false);
    const FpSet h = sumset(u, v);
    const bool prod_zero = count_solutions_product(f, a, b, u, v) == 0;
    const bool prod_disjoint = !h.intersects(product_set(f, a, b));
    const bool rec_zero = count_solutions_reciprocal(f, a, b, u, v) == 0;
    const bool rec_disjoint = !h.intersects(reciprocal_sumset(f, a, b));
    ++res.cases;
    if (prod_zero != prod_disjoint || rec_zero != rec_disjoint) {
      res.pass = false;
      res.details = "A=" + format_set(a) + " B=" + format_set(b) + " U=" + format_set(u) +
                    " V=" + format_set(v);
      break;
    }
  }
  return res;
}

CheckResult check_cor12_identities(const CheckCtx& ctx) {
  CheckResult res{"setalg.cor12_identities", true, 0, ""};
  const auto& f = ctx.f;
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    HilbertCube c;
    FpSet h;
    do {
      c = random_cube(rng, f.p(), std::min(ctx.cfg.d_max, 10u));
      h = expand(f, c);
    } while (h.contains(0));
    const FpSet e = complement(product_set(f, h, h));
    const FpSet fr = complement(ratio_set(f, h, h));
    ++res.cases;
    if (h.intersects(product_set(f, e, inverse_set(f, h))) ||
        h.intersects(product_set(f, fr, h))) {
      res.pass = false;
      res.details = "cube " + format_cube(c);
      break;
    }
  }
  return res;
}

CheckResult check_cor13_chain(const CheckCtx& ctx) {
  CheckResult res{"setalg.cor13_chain", true, 0, ""};
  const auto& f = ctx.f;
  const std::uint32_t p = f.p();
  std::vector<std::uint32_t> proper_orders;
  for (std::uint32_t t = 1; t < p - 1; ++t)
    if ((p - 1) % t == 0) proper_orders.push_back(t);
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    const Subgroup g = f.subgroup_of_order(proper_orders[rng.below(proper_orders.size())]);
    const auto lambda = static_cast<std::uint32_t>(1 + rng.below(p - 1));
    const FpSet cs = f.coset(g, lambda);
    const HilbertCube c = random_cube_inside(f, cs, rng, ctx.cfg.d_max);
    const FpSet h = expand(f, c);
    const FpSet coset_sq = f.coset(g, f.mul(lambda, lambda));
    const FpSet hh = product_set(f, h, h);
    ++res.cases;
    const bool contained = (hh - coset_sq).empty();
    const std::uint32_t comp = complement(coset_sq).card();
    if (!contained || comp != p - g.order || comp < (p + 1) / 2) {
      res.pass = false;
      res.details = "order=" + std::to_string(g.order) + " lambda=" + std::to_string(lambda) +
                    " cube=" + format_cube(c);
      break;
    }
  }
  return res;
}

CheckResult check_convolution_vs_naive(const CheckCtx& ctx) {
  CheckResult res{"setalg.counting_vs_naive", true, 0, ""};
  for (const std::uint32_t p : {7u, 13u, 31u}) {
    const PrimeField f(p);
    for (std::uint32_t t = 0; t < std::min(ctx.cfg.trials, 20u); ++t) {
      auto rng = ctx.stream(p * 1000 + t);
      const FpSet a = random_nonempty_star_set(rng, p);
      const FpSet b = random_nonempty_star_set(rng, p);
      const FpSet u = random_set(rng, p, static_cast<std::uint32_t>(rng.below(p)), false);
      const FpSet v = random_set(rng, p, static_cast<std::uint32_t>(rng.below(p)), false);
      const auto as = a.elements();
      const auto bs = b.elements();
      const auto us = u.elements();
      const auto vs = v.elements();
      std::uint64_t prod = 0, rec = 0;
      for (const auto av : as)
        for (const auto bv : bs)
          for (const auto uv : us)
            for (const auto vv : vs) {
              const std::uint32_t s = f.add(uv, vv);
              if (s == f.mul(av, bv)) ++prod;
              if (s != 0 && f.inv(s) == f.add(av, bv)) ++rec;
            }
      ++res.cases;
      if (prod != count_solutions_product(f, a, b, u, v) ||
          rec != count_solutions_reciprocal(f, a, b, u, v)) {
        res.pass = false;
        res.details = "p=" + std::to_string(p) + " A=" + format_set(a) + " B=" + format_set(b);
        return res;
      }
    }
  }
  return res;
}

CheckResult check_product_cardinality(const CheckCtx& ctx) {
  CheckResult res{"setalg.product_cardinality", true, 0, ""};
  const auto& f = ctx.f;
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    const FpSet a = random_nonempty_star_set(rng, f.p());
    const FpSet b = random_nonempty_star_set(rng, f.p());
    const std::uint64_t card = product_set(f, a, b).card();
    ++res.cases;
    if (card > static_cast<std::uint64_t>(a.card()) * b.card() ||
        card < std::max(a.card(), b.card())) {
      res.pass = false;
      res.details = "A=" + format_set(a) + " B=" + format_set(b);
      break;
    }
  }
  return res;
}

// ---- sums invariants ----

CheckResult check_count_oracles(const CheckCtx& ctx) {
  CheckResult res{"sums.count_oracle_equivalence", true, 0, ""};
  for (const std::uint32_t p : {7u, 13u, 31u}) {
    const PrimeField f(p);
    for (std::uint32_t t = 0; t < std::min(ctx.cfg.trials, 25u); ++t) {
      auto rng = ctx.stream(p * 1000 + t);
      const FpSet a = random_nonempty_star_set(rng, p);
      const FpSet b = random_nonempty_star_set(rng, p);
      const FpSet u = random_set(rng, p, static_cast<std::uint32_t>(rng.below(p)), false);
      const FpSet v = random_set(rng, p, static_cast<std::uint32_t>(rng.below(p)), false);
      const auto nc = solution_count_via_characters(f, a, b, u, v);
      const auto ne = solution_count_via_exponentials(f, a, b, u, v);
      const auto brute_p = count_solutions_product(f, a, b, u, v);
      const auto brute_r = count_solutions_reciprocal(f, a, b, u, v);
      const double tol = 1e-6 * p * a.card() * b.card();
      ++res.cases;
      if (nc.rounded != static_cast<std::int64_t>(brute_p) ||
          ne.rounded != static_cast<std::int64_t>(brute_r) ||
          std::abs(nc.value - static_cast<double>(brute_p)) > tol ||
          std::abs(ne.value - static_cast<double>(brute_r)) > tol) {
        res.pass = false;
        res.details = "p=" + std::to_string(p) + " A=" + format_set(a) + " B=" + format_set(b) +
                      " U=" + format_set(u) + " V=" + format_set(v);
        return res;
      }
    }
  }
  return res;
}

CheckResult check_mean_square(const CheckCtx& ctx) {
  CheckResult res{"sums.mean_square_identity", true, 0, ""};
  const auto& f = ctx.f;
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    const FpSet a = random_nonempty_star_set(rng, f.p());
    const double ms = mean_square_char(f, a);
    const double expect = static_cast<double>(f.p() - 1) * a.card();
    ++res.cases;
    if (std::abs(ms - expect) > 1e-6 * f.p() * a.card()) {
      res.pass = false;
      res.details = "A=" + format_set(a) + " value=" + fmt(ms) + " expect=" + fmt(expect);
      break;
    }
  }
  return res;
}

CheckResult check_bbs_and_triangle(const CheckCtx& ctx) {
  CheckResult res{"sums.bbs_and_triangle_bounds", true, 0, ""};
  const auto& f = ctx.f;
  const std::uint32_t p = f.p();
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    const FpSet u = random_set(rng, p, static_cast<std::uint32_t>(1 + rng.below(p - 1)), false);
    const FpSet v = random_set(rng, p, static_cast<std::uint32_t>(1 + rng.below(p - 1)), false);
    const SweepMax exp_max = recip_exp_sweep_max(f, u, v);
    const SweepMax chi_max = char_sweep_max(f, u, v);
    const double uv = static_cast<double>(u.card()) * v.card();
    const double bbs = std::sqrt(static_cast<double>(p) * uv);
    ++res.cases;
    if (exp_max.abs_max > bbs * (1.0 + 1e-9) || exp_max.abs_max > uv * (1.0 + 1e-9) ||
        chi_max.abs_max > uv * (1.0 + 1e-9)) {
      res.pass = false;
      res.details = "U=" + format_set(u) + " V=" + format_set(v) +
                    " exp_max=" + fmt(exp_max.abs_max) + " bbs=" + fmt(bbs);
      break;
    }
  }
  return res;
}

CheckResult check_shape_ratio_finite(const CheckCtx& ctx) {
  CheckResult res{"sums.shape_ratio_finite", true, 0, ""};
  const auto& f = ctx.f;
  const std::uint32_t p = f.p();
  double max_ratio = 0.0;
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    const FpSet u = random_set(rng, p, static_cast<std::uint32_t>(1 + rng.below(p - 1)), false);
    const FpSet v = random_set(rng, p, static_cast<std::uint32_t>(1 + rng.below(p - 1)), false);
    const CharacterIndex j{static_cast<std::uint32_t>(1 + rng.below(p - 2))};
    for (const unsigned r : ctx.cfg.r_list) {
      const SumEvaluation e = double_char_sum(f, j, u, v, r);
      ++res.cases;
      if (!std::isfinite(e.ratio_to_shape) || e.ratio_to_shape < 0) {
        res.pass = false;
        res.details = "U=" + format_set(u) + " V=" + format_set(v);
        return res;
      }
      max_ratio = std::max(max_ratio, e.ratio_to_shape);
    }
  }
  res.details = "max ratio " + fmt(max_ratio);
  return res;
}

CheckResult check_cauchy(const CheckCtx& ctx) {
  CheckResult res{"sums.cauchy_inequality", true, 0, ""};
  const auto& f = ctx.f;
  for (std::uint32_t t = 0; t < ctx.cfg.trials; ++t) {
    auto rng = ctx.stream(t);
    const FpSet a = random_nonempty_star_set(rng, f.p());
    const FpSet b = random_nonempty_star_set(rng, f.p());
    const CauchyReport rep = cauchy_bound_check(f, a, b);
    ++res.cases;
    if (!rep.holds) {
      res.pass = false;
      res.details = "A=" + format_set(a) + " B=" + format_set(b) + " S^2=" + fmt(rep.s_squared) +
                    " rhs=" + fmt(rep.rhs);
      break;
    }
  }
  return res;
}

// ---- bounds invariants ----

CheckResult check_symbolic_chains(const CheckCtx&) {
  CheckResult res{"bounds.symbolic_chains", true, 0, ""};
  auto fail = [&res](const std::string& what) {
    res.pass = false;
    res.details = what;
  };
  ++res.cases;
  if (theorem_exponent(2) != Rational(19, 4)) {
    fail("theorem exponent at r=2");
    return res;
  }
  ++res.cases;
  const EpsAffine ab{Rational(15, 8), Rational(1, 2)};
  const auto spec1 = theorem_bound_symbolic(ab, 2);
  if (spec1.rhs_exponent->exponent != EpsAffine{Rational(1), Rational(-1)}) {
    fail("specialization 15/8 + e/2 should give 1 - e, got " +
         spec1.rhs_exponent->exponent.str());
    return res;
  }
  for (const auto& [num, den] : {std::pair{1ll, 10ll}, {1ll, 2ll}, {1ll, 1ll}}) {
    const Rational eps(num, den);
    const auto r = static_cast<unsigned>((Rational(4) / eps).ceil());
    const EpsAffine ab2 =
        EpsAffine(Rational(2)) - EpsAffine(Rational(1, 4 * static_cast<long long>(r) * r));
    const auto rep = theorem_bound_symbolic(ab2, r);
    const Rational expect = Rational(1, 2) + Rational(3, 4 * static_cast<long long>(r));
    ++res.cases;
    if (!rep.rhs_exponent->exponent.is_constant() || rep.rhs_exponent->exponent.c0 != expect ||
        rep.rhs_exponent->exponent.c0 > Rational(1, 2) + eps) {
      fail("specialization 2 - 1/(4r^2) at eps=" + eps.str());
      return res;
    }
  }
  ++res.cases;
  if (hp1_grid_min_exponent() != Rational(47, 32)) {
    fail("hp kind-1 grid minimum, got " + hp1_grid_min_exponent().str());
    return res;
  }
  ++res.cases;
  if (cor12_triviality_boundary() != Rational(11, 12)) {
    fail("cor12 boundary");
    return res;
  }
  ++res.cases;
  const auto hp2 = hp_bound2_analysis(101, 101, 101);
  if (!hp2.always_trivial || std::abs(hp2.rhs_value - hp2.floor_16p) > 1e-9 * hp2.floor_16p) {
    fail("hp kind-2 floor at full sets");
    return res;
  }
  return res;
}

CheckResult check_bound_monotonicity(const CheckCtx& ctx) {
  CheckResult res{"bounds.theorem_monotonicity", true, 0, ""};
  const std::uint32_t p = ctx.f.p();
  for (unsigned r = 1; r <= 4; ++r) {
    double prev = 0.0;
    for (std::uint64_t ab = 2; ab <= p; ab *= 2) {
      const double rhs = theorem_bound(p, ab, ab, r).rhs_value;
      ++res.cases;
      if (prev != 0.0 && rhs >= prev) {
        res.pass = false;
        res.details = "not decreasing in #A#B at r=" + std::to_string(r);
        return res;
      }
      prev = rhs;
    }
  }
  const double lo = theorem_bound(101, 16, 16, 2).rhs_value;
  const double hi = theorem_bound(1009, 16, 16, 2).rhs_value;
  ++res.cases;
  if (hi <= lo) {
    res.pass = false;
    res.details = "not increasing in p";
  }
  return res;
}

struct NamedCheck {
  const char* name;
  CheckFn fn;
};

constexpr NamedCheck k_checks[] = {
    {"field.orthogonality_over_characters", check_orthogonality_characters},
    {"field.orthogonality_over_elements", check_orthogonality_elements},
    {"field.orthogonality_additive", check_orthogonality_additive},
    {"field.character_conjugation", check_conjugation},
    {"field.coset_partition", check_coset_partition},
    {"cube.expand_order_invariance", check_expand_order_invariance},
    {"cube.expand_translation", check_expand_translation},
    {"cube.partition_lemma", check_partition_lemma},
    {"setalg.disjointness_bridge", check_disjointness_bridge},
    {"setalg.cor12_identities", check_cor12_identities},
    {"setalg.cor13_chain", check_cor13_chain},
    {"setalg.counting_vs_naive", check_convolution_vs_naive},
    {"setalg.product_cardinality", check_product_cardinality},
    {"sums.count_oracle_equivalence", check_count_oracles},
    {"sums.mean_square_identity", check_mean_square},
    {"sums.bbs_and_triangle_bounds", check_bbs_and_triangle},
    {"sums.shape_ratio_finite", check_shape_ratio_finite},
    {"sums.cauchy_inequality", check_cauchy},
    {"bounds.symbolic_chains", check_symbolic_chains},
    {"bounds.theorem_monotonicity", check_bound_monotonicity},
};

}  // namespace

void ExperimentConfig::validate() const {
  if (!PrimeField::is_prime(p)) throw CompositeModulus("config p must be prime");
  if (trials == 0) throw RangeError("trials must be positive");
  if (workers == 0) throw RangeError("workers must be positive");
  if (d_max == 0 || d_max > max_cube_dim) throw RangeError("d_max must lie in [1, 30]");
  for (const unsigned r : r_list)
    if (r == 0) throw BadR("r values must be positive");
}

ExperimentConfig ExperimentConfig::from_kv_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line without '=': " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "p")
      cfg.p = static_cast<std::uint32_t>(std::stoull(value));
    else if (key == "seed")
      cfg.seed = std::stoull(value);
    else if (key == "trials")
      cfg.trials = static_cast<std::uint32_t>(std::stoull(value));
    else if (key == "d_max")
      cfg.d_max = static_cast<std::uint32_t>(std::stoull(value));
    else if (key == "r_list")
      cfg.r_list = parse_unsigned_list(value);
    else if (key == "sizes")
      cfg.set_size_grid = parse_u32_list(value);
    else if (key == "kind")
      cfg.sweep_kind = value == "exp" ? SweepKind::RecipExpSum : SweepKind::CharSum;
    else if (key == "workers")
      cfg.workers = static_cast<unsigned>(std::stoull(value));
    else if (key == "restarts")
      cfg.restarts = static_cast<unsigned>(std::stoull(value));
    else if (key == "out")
      cfg.output_path = value;
    else
      throw ParseError("unknown config key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_kv_text(ss.str());
}

std::string VerifyReport::text() const {
  std::string out = "verify p=" + std::to_string(p) + " seed=" + std::to_string(seed) +
                    " trials=" + std::to_string(trials) + "\n";
  std::size_t passed = 0;
  for (const auto& c : checks) {
    out += c.pass ? "[PASS] " : "[FAIL] ";
    out += c.name + " (" + std::to_string(c.cases) + " cases)";
    if (!c.details.empty()) out += c.pass ? " -- " + c.details : "";
    out += "\n";
    if (!c.pass && !c.details.empty()) out += "    counterexample: " + c.details + "\n";
    passed += c.pass;
  }
  out += "RESULT: " + std::string(all_pass ? "PASS" : "FAIL") + " (" + std::to_string(passed) +
         "/" + std::to_string(checks.size()) + " checks)\n";
  return out;
}

VerifyReport verify_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  const PrimeField f(cfg.p, TableMode::Require);
  // Warm the lazy root tables before the workers fan out.
  f.mult_roots();
  f.add_roots();

  const std::size_t n = std::size(k_checks);
  VerifyReport rep;
  rep.p = cfg.p;
  rep.seed = cfg.seed;
  rep.trials = cfg.trials;
  rep.checks.resize(n);
  run_indexed(n, cfg.workers, [&](std::size_t i) {
    const CheckCtx ctx{f, cfg, static_cast<std::uint64_t>(i) << 24};
    rep.checks[i] = k_checks[i].fn(ctx);
    rep.checks[i].name = k_checks[i].name;
  });
  for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

std::string sweep_charsum_ratios(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.set_size_grid.empty()) throw RangeError("set size grid must be nonempty");
  for (const auto s : cfg.set_size_grid)
    if (s == 0 || s >= cfg.p) throw RangeError("set sizes must lie in [1, p-1]");
  const PrimeField f(cfg.p, TableMode::Require);
  f.mult_roots();
  f.add_roots();

  std::vector<std::string> rows(cfg.trials);
  run_indexed(cfg.trials, cfg.workers, [&](std::size_t i) {
    auto rng = SplitMix64::stream(cfg.seed, i);
    const std::uint32_t su = cfg.set_size_grid[rng.below(cfg.set_size_grid.size())];
    const std::uint32_t sv = cfg.set_size_grid[rng.below(cfg.set_size_grid.size())];
    const FpSet u = random_set(rng, cfg.p, su, false);
    const FpSet v = random_set(rng, cfg.p, sv, false);
    const SweepMax m = cfg.sweep_kind == SweepKind::CharSum ? char_sweep_max(f, u, v)
                                                            : recip_exp_sweep_max(f, u, v);
    const double bbs =
        std::sqrt(static_cast<double>(cfg.p) * u.card() * v.card());
    std::string& out = rows[i];
    for (const unsigned r : cfg.r_list) {
      const double shape = karatsuba_shape_bound(cfg.p, u.card(), v.card(), r);
      out += std::to_string(cfg.p) + "," + std::to_string(u.card()) + "," +
             std::to_string(v.card()) + "," + std::to_string(r) + "," + fmt(m.abs_max) + "," +
             fmt(shape) + "," + fmt(bbs) + "," + fmt(shape > 0 ? m.abs_max / shape : 0.0) + "\n";
    }
  });

  std::string csv = "#schema=1\np,u,v,r,abs_max,shape_bound,bbs_bound,ratio\n";
  for (const auto& row : rows) csv += row;
  return csv;
}

namespace {

struct SearchProblem {
  const PrimeField& f;
  const FpSet& allowed_a0;  // residues where a singleton cube is valid
  const FpSet& blocked;     // expansion must stay disjoint from this
  std::uint32_t d_max;
};

inline constexpr std::uint64_t search_node_budget = 100'000'000;

// Depth-first enumeration over canonical (nondecreasing, nonzero) generator
// tuples. Pruning is monotone: once the expansion touches `blocked`, every
// extension does too. Aborts when the visited-node budget runs out.
void exhaustive_search(const SearchProblem& pr, FpSet& h, std::vector<std::uint32_t>& gens,
                       std::uint32_t a0, std::uint32_t min_gen, HilbertCube& best_cube,
                       std::uint32_t& best_card, std::uint64_t& nodes) {
  if (++nodes > search_node_budget)
    throw EnumerationTooLarge("exhaustive search budget exceeded; lower d_max");
  if (h.card() > best_card) {
    best_card = h.card();
    best_cube = HilbertCube{a0, gens};
  }
  if (gens.size() >= pr.d_max) return;
  for (std::uint32_t g = min_gen; g < pr.f.p(); ++g) {
    FpSet ext = h | h.rotated(g);
    if (ext.intersects(pr.blocked)) continue;
    gens.push_back(g);
    exhaustive_search(pr, ext, gens, a0, g, best_cube, best_card, nodes);
    gens.pop_back();
  }
}

SearchResult run_search(const SearchProblem& pr, ConstraintKind kind, SearchMode mode,
                        std::uint64_t seed, unsigned restarts) {
  const std::uint32_t p = pr.f.p();
  SearchResult out;
  out.constraint = kind;
  if (pr.allowed_a0.empty())
    throw RangeError("no residue can start a cube under this constraint");

  const bool exhaustive =
      mode == SearchMode::Exhaustive || (mode == SearchMode::Auto && p <= exhaustive_p_cap);
  if (exhaustive) {
    if (p > exhaustive_p_cap)
      throw EnumerationTooLarge("exhaustive search capped at p <= 31");
    std::uint32_t best_card = 0;
    HilbertCube best;
    std::uint64_t nodes = 0;
    pr.allowed_a0.for_each([&](std::uint32_t a0) {
      FpSet h(p);
      h.insert(a0);
      std::vector<std::uint32_t> gens;
      exhaustive_search(pr, h, gens, a0, 1, best, best_card, nodes);
    });
    out.best_cube = best;
    out.best_card = best_card;
    out.exhaustive = true;
    return out;
  }

  // Steepest ascent over generator insertion/replacement, random restarts.
  const auto starts = pr.allowed_a0.elements();
  std::uint32_t best_card = 0;
  HilbertCube best;
  for (unsigned restart = 0; restart < restarts; ++restart) {
    auto rng = SplitMix64::stream(seed, restart);
    HilbertCube cur{starts[rng.below(starts.size())], {}};
    std::uint32_t cur_card = 1;
    for (bool improved = true; improved;) {
      improved = false;
      // Candidate generators: full scan for small p, a sample otherwise.
      std::vector<std::uint32_t> cand;
      if (p <= 512) {
        cand.resize(p - 1);
        for (std::uint32_t g = 1; g < p; ++g) cand[g - 1] = g;
      } else {
        cand.resize(128);
        for (auto& g : cand) g = static_cast<std::uint32_t>(1 + rng.below(p - 1));
      }
      HilbertCube best_move;
      std::uint32_t best_move_card = cur_card;
      auto consider = [&](HilbertCube&& c) {
        const FpSet h = expand(pr.f, c);
        if (h.intersects(pr.blocked)) return;
        if (h.card() > best_move_card) {
          best_move_card = h.card();
          best_move = std::move(c);
        }
      };
      for (const std::uint32_t g : cand) {
        if (cur.gens.size() < pr.d_max) {
          HilbertCube c = cur;
          c.gens.push_back(g);
          consider(std::move(c));
        }
        for (std::size_t i = 0; i < cur.gens.size(); ++i) {
          HilbertCube c = cur;
          c.gens[i] = g;
          consider(std::move(c));
        }
      }
      if (best_move_card > cur_card) {
        cur = best_move;
        cur_card = best_move_card;
        improved = true;
      }
    }
    if (cur_card > best_card) {
      best_card = cur_card;
      best = cur;
    }
  }
  out.best_cube = best;
  out.best_card = best_card;
  out.exhaustive = false;
  return out;
}

}  // namespace

SearchResult search_max_avoiding_cube(const PrimeField& f, const FpSet& a, const FpSet& b,
                                      ConstraintKind kind, std::uint32_t d_max,
                                      const std::vector<unsigned>& r_list, SearchMode mode,
                                      std::uint64_t seed, unsigned restarts) {
  if (kind == ConstraintKind::InsideCoset)
    throw RangeError("coset searches go through cube_in_coset_search");
  if (a.contains(0) || b.contains(0))
    throw ContainsZero("avoidance searches need A, B inside F_p^*");
  if (a.empty() || b.empty()) throw RangeError("A and B must be nonempty");
  const FpSet blocked = kind == ConstraintKind::AvoidProduct ? product_set(f, a, b)
                                                             : reciprocal_sumset(f, a, b);
  const FpSet allowed = blocked.complemented();
  SearchResult res =
      run_search({f, allowed, blocked, d_max}, kind, mode, seed, restarts);

  // Re-validate through plain set algebra before reporting.
  if (expand(f, res.best_cube).intersects(blocked))
    throw Error("internal: search produced a cube violating its constraint");

  double bound = 0.0;
  bool first = true;
  for (const unsigned r : r_list.empty() ? std::vector<unsigned>{2} : r_list) {
    const double v = theorem_bound(f.p(), a.card(), b.card(), r).rhs_value;
    if (first || v < bound) {
      bound = v;
      first = false;
    }
  }
  res.bound_value = bound;
  res.ratio = bound > 0 ? res.best_card / bound : 0.0;
  return res;
}

SearchResult cube_in_coset_search(const PrimeField& f, const Subgroup& g, std::uint32_t lambda,
                                  std::uint32_t d_max, SearchMode mode, std::uint64_t seed,
                                  unsigned restarts) {
  if (g.order >= f.p() - 1) throw NotProper("coset threshold needs a proper subgroup");
  const FpSet inside = f.coset(g, lambda);
  const FpSet blocked = inside.complemented();
  SearchResult res = run_search({f, inside, blocked, d_max}, ConstraintKind::InsideCoset, mode,
                                seed, restarts);
  const FpSet h = expand(f, res.best_cube);
  if (h.intersects(blocked) || !inside.contains(res.best_cube.a0))
    throw Error("internal: search produced a cube outside the coset");
  res.bound_value = cor13_threshold(f.p()).value;
  res.ratio = res.bound_value > 0 ? res.best_card / res.bound_value : 0.0;
  return res;
}

CoverageReport coverage_report_hh(const PrimeField& f, const HilbertCube& c) {
  const FpSet h = expand(f, c);
  if (h.contains(0)) throw ContainsZero("ratio coverage needs a cube inside F_p^*");
  const FpSet e = complement(product_set(f, h, h));
  const FpSet fr = complement(ratio_set(f, h, h));
  CoverageReport rep;
  rep.card_h = h.card();
  rep.card_e = e.card();
  rep.card_f = fr.card();
  rep.cor12_rhs = cor12_bound(f.p(), h.card()).rhs_value;
  rep.identities_hold = !h.intersects(product_set(f, e, inverse_set(f, h))) &&
                        !h.intersects(product_set(f, fr, h));
  return rep;
}

}  // namespace hc

#include <cmath>
#include <cstdio>
#include <set>

#include "doctest.h"
#include "hc/lab.hpp"
#include "hc/parse.hpp"
#include "hc/rng.hpp"
#include "hc/setalg.hpp"

using namespace hc;

namespace {

// Plain-loop reference enumerator, kept deliberately independent of the
// CubeEnumerator/FpSet machinery: all generator tuples (not canonicalized),
// expansion by direct subset sums, membership via bool vectors.
std::uint32_t naive_best_avoiding(std::uint32_t p, const std::vector<bool>& forbidden,
                                  std::uint32_t d_max) {
  std::uint32_t best = 0;
  std::vector<std::uint32_t> gens;
  auto eval = [&](std::uint32_t a0) {
    std::vector<bool> seen(p, false);
    std::uint32_t card = 0;
    const std::size_t d = gens.size();
    for (std::uint64_t mask = 0; mask < (1ull << d); ++mask) {
      std::uint64_t s = a0;
      for (std::size_t i = 0; i < d; ++i)
        if (mask >> i & 1) s += gens[i];
      const auto r = static_cast<std::uint32_t>(s % p);
      if (forbidden[r]) return;
      if (!seen[r]) {
        seen[r] = true;
        ++card;
      }
    }
    best = std::max(best, card);
  };
  auto rec = [&](auto&& self, std::uint32_t depth) -> void {
    for (std::uint32_t a0 = 0; a0 < p; ++a0) eval(a0);
    if (depth == d_max) return;
    for (std::uint32_t g = 1; g < p; ++g) {
      gens.push_back(g);
      self(self, depth + 1);
      gens.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

std::uint32_t naive_best_in_coset(std::uint32_t p, const std::vector<bool>& inside,
                                  std::uint32_t d_max) {
  std::vector<bool> outside(p);
  for (std::uint32_t i = 0; i < p; ++i) outside[i] = !inside[i];
  return naive_best_avoiding(p, outside, d_max);
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const ExperimentConfig cfg = ExperimentConfig::from_kv_text(
      "# comment\np = 31\nseed=9\ntrials=5\nd_max=4\nr_list=1,2\nsizes=3,5\nkind=exp\n"
      "workers=2\nout=x.csv\n");
  CHECK(cfg.p == 31);
  CHECK(cfg.seed == 9);
  CHECK(cfg.trials == 5);
  CHECK(cfg.d_max == 4);
  CHECK(cfg.r_list == std::vector<unsigned>{1, 2});
  CHECK(cfg.set_size_grid == std::vector<std::uint32_t>{3, 5});
  CHECK(cfg.sweep_kind == SweepKind::RecipExpSum);
  CHECK(cfg.workers == 2);
  CHECK(cfg.output_path == "x.csv");
  CHECK_THROWS_AS(ExperimentConfig::from_kv_text("bogus=1"), ParseError);
  CHECK_THROWS_AS(ExperimentConfig::from_kv_text("p"), ParseError);

  ExperimentConfig bad;
  bad.p = 9;
  CHECK_THROWS_AS(bad.validate(), CompositeModulus);
  bad.p = 31;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), RangeError);
}

TEST_CASE("verify suite handles the smallest fields") {
  for (const std::uint32_t p : {3u, 5u}) {
    ExperimentConfig cfg;
    cfg.p = p;
    cfg.trials = 4;
    cfg.d_max = 4;
    const VerifyReport rep = verify_suite(cfg);
    CHECK(rep.all_pass);
  }
}

TEST_CASE("verify suite passes and is byte-deterministic across workers") {
  ExperimentConfig cfg;
  cfg.p = 31;
  cfg.seed = 7;
  cfg.trials = 6;
  cfg.d_max = 6;
  cfg.set_size_grid = {3, 5, 9};

  cfg.workers = 1;
  const VerifyReport one = verify_suite(cfg);
  CHECK(one.all_pass);
  for (const auto& c : one.checks) {
    INFO(c.name, ": ", c.details);
    CHECK(c.pass);
  }

  cfg.workers = 4;
  const VerifyReport four = verify_suite(cfg);
  CHECK(one.text() == four.text());
  CHECK(one.text() == verify_suite(cfg).text());
}

TEST_CASE("sweep output is stable across runs and worker counts") {
  ExperimentConfig cfg;
  cfg.p = 31;
  cfg.seed = 13;
  cfg.trials = 8;
  cfg.set_size_grid = {4, 9};
  cfg.r_list = {1, 2};

  cfg.sweep_kind = SweepKind::RecipExpSum;
  cfg.workers = 1;
  const std::string a = sweep_charsum_ratios(cfg);
  cfg.workers = 4;
  const std::string b = sweep_charsum_ratios(cfg);
  CHECK(a == b);
  CHECK(a.rfind("#schema=1\n", 0) == 0);
  CHECK(a.find("p,u,v,r,abs_max,shape_bound,bbs_bound,ratio\n") != std::string::npos);
  // trials * |r_list| data rows
  std::size_t rows = 0;
  for (const char ch : a)
    if (ch == '\n') ++rows;
  CHECK(rows == 2 + 8 * 2);

  cfg.sweep_kind = SweepKind::CharSum;
  CHECK(sweep_charsum_ratios(cfg) == sweep_charsum_ratios(cfg));
}

TEST_CASE("sweep rows respect the BBS and triangle bounds") {
  ExperimentConfig cfg;
  cfg.p = 101;
  cfg.seed = 3;
  cfg.trials = 10;
  cfg.set_size_grid = {5, 20, 60};
  cfg.r_list = {2};
  cfg.sweep_kind = SweepKind::RecipExpSum;
  const std::string csv = sweep_charsum_ratios(cfg);
  std::size_t pos = csv.find('\n', csv.find('\n') + 1) + 1;  // skip schema + header
  int rows = 0;
  while (pos < csv.size()) {
    const std::size_t end = csv.find('\n', pos);
    const std::string line = csv.substr(pos, end - pos);
    double vals[8];
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &vals[0], &vals[1],
                        &vals[2], &vals[3], &vals[4], &vals[5], &vals[6], &vals[7]) == 8);
    const double u = vals[1], v = vals[2], abs_max = vals[4], bbs = vals[6], ratio = vals[7];
    CHECK(abs_max <= bbs * (1 + 1e-9));
    CHECK(abs_max <= u * v * (1 + 1e-9));
    CHECK(ratio >= 0);
    CHECK(std::isfinite(ratio));
    ++rows;
    pos = end + 1;
  }
  CHECK(rows == 10);
}

TEST_CASE("exhaustive avoidance search matches the naive reference") {
  const PrimeField f(7);
  const FpSet one(7, {1});
  // A = B = {1}: the forbidden set is {1}; d_max 4 reaches the 6-element cube
  const SearchResult res = search_max_avoiding_cube(f, one, one, ConstraintKind::AvoidProduct, 4,
                                                    {1, 2});
  CHECK(res.exhaustive);
  CHECK(res.best_card == 6);
  const FpSet h = expand(f, res.best_cube);
  CHECK(h.card() == 6);
  CHECK(!h.intersects(product_set(f, one, one)));

  std::vector<bool> forbidden(7, false);
  forbidden[1] = true;
  CHECK(naive_best_avoiding(7, forbidden, 4) == 6);
}

TEST_CASE("exhaustive search equals the naive reference on random instances") {
  const std::uint32_t p = 13;
  const PrimeField f(p);
  SplitMix64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    const auto sa = static_cast<std::uint32_t>(1 + rng.below(6));
    const auto sb = static_cast<std::uint32_t>(1 + rng.below(6));
    const FpSet a = FpSet::from_elements(p, sample_residues(rng, p, sa, true));
    const FpSet b = FpSet::from_elements(p, sample_residues(rng, p, sb, true));
    for (const auto kind : {ConstraintKind::AvoidProduct, ConstraintKind::AvoidReciprocal}) {
      const SearchResult res = search_max_avoiding_cube(f, a, b, kind, 3, {2});
      const FpSet blocked =
          kind == ConstraintKind::AvoidProduct ? product_set(f, a, b) : reciprocal_sumset(f, a, b);
      std::vector<bool> forbidden(p, false);
      blocked.for_each([&](std::uint32_t x) { forbidden[x] = true; });
      REQUIRE(res.best_card == naive_best_avoiding(p, forbidden, 3));
      REQUIRE(!expand(f, res.best_cube).intersects(blocked));
    }
  }
}

TEST_CASE("search when the product set covers all of F_p^*") {
  const PrimeField f(7);
  const FpSet all_star(7, {1, 2, 3, 4, 5, 6});
  const SearchResult res = search_max_avoiding_cube(f, all_star, all_star,
                                                    ConstraintKind::AvoidProduct, 3, {2});
  CHECK(res.best_card == 1);  // only {0} survives
  CHECK(expand(f, res.best_cube) == FpSet(7, {0}));
}

TEST_CASE("search rejects sets containing zero") {
  const PrimeField f(7);
  CHECK_THROWS_AS(search_max_avoiding_cube(f, FpSet(7, {0, 1}), FpSet(7, {1}),
                                           ConstraintKind::AvoidProduct, 3, {2}),
                  ContainsZero);
}

TEST_CASE("heuristic search returns a valid cube") {
  const PrimeField f(101);
  SplitMix64 rng(123);
  const FpSet a = FpSet::from_elements(101, sample_residues(rng, 101, 20, true));
  const FpSet b = FpSet::from_elements(101, sample_residues(rng, 101, 20, true));
  const SearchResult res = search_max_avoiding_cube(f, a, b, ConstraintKind::AvoidReciprocal, 6,
                                                    {2}, SearchMode::Heuristic, 5, 3);
  CHECK(!res.exhaustive);
  CHECK(res.best_card >= 1);
  CHECK(!expand(f, res.best_cube).intersects(reciprocal_sumset(f, a, b)));
  // deterministic for a fixed seed
  const SearchResult again = search_max_avoiding_cube(f, a, b, ConstraintKind::AvoidReciprocal, 6,
                                                      {2}, SearchMode::Heuristic, 5, 3);
  CHECK(format_cube(again.best_cube) == format_cube(res.best_cube));
}

TEST_CASE("coset search: exhaustive maxima at p = 7") {
  const PrimeField f(7);
  const Subgroup g3 = f.subgroup_of_order(3);

  const SearchResult res1 = cube_in_coset_search(f, g3, 1, 3);
  std::vector<bool> inside1(7, false);
  f.coset(g3, 1).for_each([&](std::uint32_t x) { inside1[x] = true; });
  CHECK(res1.best_card == naive_best_in_coset(7, inside1, 3));
  CHECK(res1.best_card == 2);  // e.g. H(1;1) = {1,2} inside {1,2,4}

  const Subgroup g2 = f.subgroup_of_order(2);  // {1,6}
  const SearchResult res2 = cube_in_coset_search(f, g2, 3, 3);
  CHECK(res2.best_card == 2);  // coset {3,4} contains H(3;1)
  CHECK(res2.bound_value == doctest::Approx(std::pow(7.0, 11.0 / 12.0)));

  CHECK_THROWS_AS(cube_in_coset_search(f, f.subgroup_of_order(6), 1, 3), NotProper);
}

TEST_CASE("coverage report") {
  const PrimeField f(101);
  const CoverageReport rep = coverage_report_hh(f, parse_cube("1;1,2,4,8,16,32"));
  CHECK(rep.card_h == 64);
  CHECK(rep.identities_hold);
  CHECK(rep.card_e == complement(product_set(f, expand(f, parse_cube("1;1,2,4,8,16,32")),
                                             expand(f, parse_cube("1;1,2,4,8,16,32"))))
                          .card());
  CHECK(rep.cor12_rhs == doctest::Approx(std::pow(101.0, 19.0 / 8.0) / std::pow(64.0, 1.5)));

  CHECK_THROWS_AS(coverage_report_hh(f, parse_cube("0;1,2")), ContainsZero);

  // degenerate full-group cube: E ends up inside {0}
  const PrimeField f7(7);
  const CoverageReport full = coverage_report_hh(f7, parse_cube("1;1,1,1,2"));
  CHECK(expand(f7, parse_cube("1;1,1,1,2")) == FpSet(7, {1, 2, 3, 4, 5, 6}));
  CHECK(full.card_e <= 1);
}

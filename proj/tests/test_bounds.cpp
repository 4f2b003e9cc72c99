#include <cmath>

#include "doctest.h"
#include "hc/bounds.hpp"

using namespace hc;

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(-4, -8) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(3, 2) == Rational(1));
  CHECK(Rational(1, 3).pow(3) == Rational(1, 27));
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(4, 2).ceil() == 2);
  CHECK(Rational(19, 4).str() == "19/4");
  CHECK(Rational(3).str() == "3");
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK_THROWS_AS(Rational(1, 0), RangeError);
  const Rational big(1ll << 62);
  CHECK_THROWS_AS(big * big, Overflow);
}

TEST_CASE("eps-affine expressions parse and print") {
  CHECK(parse_eps_affine("15/8+e/2") == EpsAffine(Rational(15, 8), Rational(1, 2)));
  CHECK(parse_eps_affine("1 - e") == EpsAffine(Rational(1), Rational(-1)));
  CHECK(parse_eps_affine("2-1/36") == EpsAffine(Rational(71, 36)));
  CHECK(parse_eps_affine("3e/4") == EpsAffine(Rational(0), Rational(3, 4)));
  CHECK(parse_eps_affine("0.1") == EpsAffine(Rational(1, 10)));
  CHECK(parse_eps_affine("-e") == EpsAffine(Rational(0), Rational(-1)));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK_THROWS_AS(parse_rational("1+e"), ParseError);
  CHECK_THROWS_AS(parse_eps_affine(""), ParseError);
  CHECK_THROWS_AS(parse_eps_affine("1&2"), ParseError);

  CHECK(EpsAffine(Rational(1), Rational(-1)).str() == "1 - e");
  CHECK(EpsAffine(Rational(15, 8), Rational(1, 2)).str() == "15/8 + e/2");
  CHECK(EpsAffine(Rational(0), Rational(3, 4)).str() == "3e/4");
  CHECK(EpsAffine(Rational(47, 32)).str() == "47/32");
  // round trip
  for (const char* s : {"15/8+e/2", "1 - e", "7/8", "1/2 + 3e/4"}) {
    const EpsAffine e = parse_eps_affine(s);
    CHECK(parse_eps_affine(e.str()) == e);
  }
}

TEST_CASE("theorem exponent chain at r = 2 is exactly 19/4") {
  CHECK(theorem_exponent(2) == Rational(19, 4));
  CHECK(theorem_exponent(1) == Rational(3));
  CHECK_THROWS_AS(theorem_exponent(0), BadR);
}

TEST_CASE("specialization: AB = p^(15/8 + e/2) at r = 2 gives H-exponent 1 - e") {
  const auto rep = theorem_bound_symbolic(EpsAffine(Rational(15, 8), Rational(1, 2)), 2);
  REQUIRE(rep.rhs_exponent.has_value());
  CHECK(rep.rhs_exponent->exponent == EpsAffine(Rational(1), Rational(-1)));
  CHECK(rep.rhs_exponent->exponent.str() == "1 - e");
}

TEST_CASE("specialization: AB = p^(2 - 1/(4r^2)) gives H-exponent 1/2 + 3/(4r)") {
  for (const auto& [n, d] : {std::pair<long long, long long>{1, 10}, {1, 2}, {1, 1}}) {
    const Rational eps(n, d);
    const auto r = static_cast<unsigned>((Rational(4) / eps).ceil());
    const auto rr = static_cast<long long>(r);
    const EpsAffine ab = EpsAffine(Rational(2) - Rational(1, 4 * rr * rr));
    const auto rep = theorem_bound_symbolic(ab, r);
    REQUIRE(rep.rhs_exponent->exponent.is_constant());
    CHECK(rep.rhs_exponent->exponent.c0 == Rational(1, 2) + Rational(3, 4 * rr));
    CHECK(rep.rhs_exponent->exponent.c0 <= Rational(1, 2) + eps);
  }
}

TEST_CASE("concrete theorem bound and optimize_r") {
  const auto rep = theorem_bound(101, 10, 10, 2);
  CHECK(rep.rhs_value ==
        doctest::Approx(std::pow(101.0, 4.75) / std::pow(100.0, 2)).epsilon(1e-12));
  CHECK_THROWS_AS(theorem_bound(101, 0, 1, 2), RangeError);
  CHECK_THROWS_AS(theorem_bound(101, 1, 1, 0), BadR);

  // tiny sets: rhs grows with r, so r* = 1 (checked against a direct sweep)
  const auto [r1, rep1] = optimize_r(101, 1, 1, 8);
  CHECK(r1 == 1);
  double best = 1e300;
  unsigned best_r = 0;
  for (unsigned r = 1; r <= 8; ++r) {
    const double v = theorem_bound(101, 1, 1, r).rhs_value;
    if (v < best) {
      best = v;
      best_r = r;
    }
  }
  CHECK(best_r == 1);
  CHECK(rep1.rhs_value == doctest::Approx(best));

  // AB = p^2 exactly: exponent 1/2 + 1/(2r) decreases in r
  const auto [r2, rep2] = optimize_r(101, 101, 101, 6);
  CHECK(r2 == 6);

  const auto [r3, rep3] = optimize_r(101, 50, 60, 1);
  CHECK(r3 == 1);
}

TEST_CASE("theorem bound monotonicity") {
  for (unsigned r = 1; r <= 4; ++r) {
    double prev = 1e300;
    for (std::uint64_t ab = 2; ab <= 101; ab += 13) {
      const double v = theorem_bound(101, ab, ab, r).rhs_value;
      CHECK(v < prev);
      prev = v;
    }
  }
  CHECK(theorem_bound(1009, 30, 30, 2).rhs_value > theorem_bound(101, 30, 30, 2).rhs_value);
}

TEST_CASE("cor12 bound and its triviality boundary") {
  CHECK(cor12_triviality_boundary() == Rational(11, 12));
  CHECK(cor12_bound_symbolic(EpsAffine(Rational(11, 12))).rhs_exponent->exponent ==
        EpsAffine(Rational(1)));
  CHECK(cor12_bound_symbolic(EpsAffine(Rational(1))).rhs_exponent->exponent ==
        EpsAffine(Rational(7, 8)));
  CHECK(cor12_bound_symbolic(EpsAffine(Rational(1))).trivial == false);

  const auto rep = cor12_bound(101, 1);
  CHECK(rep.rhs_value == doctest::Approx(std::pow(101.0, 19.0 / 8.0)).epsilon(1e-12));
  CHECK(rep.trivial);
}

TEST_CASE("cor13 threshold") {
  const auto t = cor13_threshold(101);
  CHECK(t.value == doctest::Approx(std::pow(101.0, 11.0 / 12.0)).epsilon(1e-12));
  CHECK(t.value == doctest::Approx(68.7).epsilon(0.01));
  CHECK(t.complement_floor == 51);
  CHECK(t.threshold.exponent == EpsAffine(Rational(11, 12)));
}

TEST_CASE("hp bound 1: the whole chain bottoms out at 47/32") {
  const auto rep = hp_bound1_analysis(Rational(1, 100), Rational(3, 4));
  CHECK(rep.chain_exponent == Rational(47, 32));
  CHECK(rep.exponent_with_eta == Rational(47, 32) + Rational(1, 400));
  CHECK(rep.always_trivial);
  CHECK(rep.intermediate == "p^(9/4) / (p^(1/2) (#G)^(3/8))");

  CHECK(hp1_grid_min_exponent() == Rational(47, 32));

  // any positive eta only raises the exponent
  CHECK(hp_bound1_analysis(Rational(1), Rational(3, 4)).exponent_with_eta >
        hp_bound1_analysis(Rational(1, 2), Rational(3, 4)).exponent_with_eta);
  CHECK_THROWS_AS(hp_bound1_analysis(Rational(0), Rational(1, 2)), BadEta);
  CHECK_THROWS_AS(hp_bound1_analysis(Rational(1), Rational(7, 8)), RangeError);
}

TEST_CASE("hp bound 2 is always trivial") {
  const auto full = hp_bound2_analysis(101, 101, 101);
  CHECK(full.rhs_value == doctest::Approx(16.0 * 101).epsilon(1e-12));
  CHECK(full.always_trivial);
  CHECK(!full.half_square_case);

  const auto tiny = hp_bound2_analysis(101, 1, 1);
  CHECK(tiny.rhs_value == doctest::Approx(16.0 * 101.0 * 101 * 101).epsilon(1e-12));
  CHECK(tiny.half_square_case);

  for (std::uint64_t a = 1; a <= 101; a += 20)
    for (std::uint64_t b = 1; b <= 101; b += 20)
      CHECK(hp_bound2_analysis(101, a, b).rhs_value >= 16.0 * 101 * (1 - 1e-12));
  CHECK_THROWS_AS(hp_bound2_analysis(101, 102, 1), RangeError);
}

TEST_CASE("exponent expression algebra and printing") {
  ExponentExpr a{EpsAffine(Rational(19, 8)), Rational(1)};
  ExponentExpr b{EpsAffine(Rational(3, 2)), Rational(4)};
  CHECK(a.times(b).exponent == EpsAffine(Rational(31, 8)));
  CHECK(a.times(b).multiplier == Rational(4));
  CHECK(a.divided_by(b).exponent == EpsAffine(Rational(7, 8)));
  CHECK(b.power(Rational(2)).multiplier == Rational(16));
  CHECK(a.power(Rational(-3, 2)).exponent == EpsAffine(Rational(-57, 16)));
  CHECK_THROWS_AS(b.power(Rational(1, 2)), RangeError);

  CHECK(a.str() == "p^(19/8)");
  CHECK(ExponentExpr{EpsAffine(Rational(3)), Rational(16)}.str() == "16 * p^3");
  CHECK(ExponentExpr{EpsAffine(Rational(1), Rational(-1)), Rational(1)}.str() == "p^(1 - e)");

  CHECK(a.value_at(101.0) == doctest::Approx(std::pow(101.0, 19.0 / 8.0)));
  CHECK(ExponentExpr{EpsAffine(Rational(1), Rational(-1)), Rational(1)}.value_at(101.0, 0.5) ==
        doctest::Approx(std::pow(101.0, 0.5)));
}

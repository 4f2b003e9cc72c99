#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hc/bounds.hpp"
#include "hc/cube.hpp"
#include "hc/field.hpp"
#include "hc/fpset.hpp"

namespace hc {

enum class SweepKind { CharSum, RecipExpSum };

// Everything an experiment needs to be reproduced: the PRNG is splitmix64 and
// trial i draws from SplitMix64::stream(seed, i), so results do not depend on
// worker count or scheduling.
struct ExperimentConfig {
  std::uint32_t p = 101;
  std::uint64_t seed = 1;
  std::uint32_t trials = 50;
  std::uint32_t d_max = 8;
  std::vector<unsigned> r_list = {1, 2, 3};
  std::vector<std::uint32_t> set_size_grid = {4, 8, 16, 32};
  SweepKind sweep_kind = SweepKind::CharSum;
  unsigned workers = 1;
  unsigned restarts = 8;
  std::string output_path;

  void validate() const;
  static ExperimentConfig from_kv_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::uint64_t cases = 0;
  std::string details;  // counterexample dump when failing
};

struct VerifyReport {
  std::uint32_t p = 0;
  std::uint64_t seed = 0;
  std::uint32_t trials = 0;
  std::vector<CheckResult> checks;
  bool all_pass = true;

  std::string text() const;
};

// Runs every module invariant with randomized instances. Deterministic for a
// fixed (p, seed, trials); output does not depend on worker count.
VerifyReport verify_suite(const ExperimentConfig& cfg);

// CSV sweep of max character-sum (or reciprocal-exponential-sum) moduli
// against the shape and sqrt(pUV) bounds. First line "#schema=1", then a
// header row; rows are (p,u,v,r,abs_max,shape_bound,bbs_bound,ratio).
std::string sweep_charsum_ratios(const ExperimentConfig& cfg);

enum class ConstraintKind { AvoidProduct, AvoidReciprocal, InsideCoset };
enum class SearchMode { Auto, Exhaustive, Heuristic };

inline constexpr std::uint32_t exhaustive_p_cap = 31;

struct SearchResult {
  HilbertCube best_cube;
  std::uint32_t best_card = 0;
  ConstraintKind constraint = ConstraintKind::AvoidProduct;
  double bound_value = 0.0;  // min over r_list of the theorem rhs, or the
                             // coset threshold p^(11/12)
  double ratio = 0.0;        // best_card / bound_value
  bool exhaustive = false;
};

// Largest cube (by expanded cardinality) avoiding A*B or (A+B)^{-1}.
// Exhaustive enumeration up to p = 31; steepest-ascent generator replacement
// with random restarts beyond. The winning cube is re-validated against the
// constraint before it is returned.
SearchResult search_max_avoiding_cube(const PrimeField& f, const FpSet& a, const FpSet& b,
                                      ConstraintKind kind, std::uint32_t d_max,
                                      const std::vector<unsigned>& r_list,
                                      SearchMode mode = SearchMode::Auto, std::uint64_t seed = 1,
                                      unsigned restarts = 8);

// Largest cube contained in the coset lambda*G of a proper subgroup G.
SearchResult cube_in_coset_search(const PrimeField& f, const Subgroup& g, std::uint32_t lambda,
                                  std::uint32_t d_max, SearchMode mode = SearchMode::Auto,
                                  std::uint64_t seed = 1, unsigned restarts = 8);

struct CoverageReport {
  std::uint32_t card_h = 0;
  std::uint32_t card_e = 0;  // #(F_p \ H*H)
  std::uint32_t card_f = 0;  // #(F_p \ H*H^{-1})
  double cor12_rhs = 0.0;
  bool identities_hold = false;  // H avoids E*H^{-1} and F*H, checked exactly
};

// ContainsZero when 0 is in the cube (the ratio part needs H in F_p^*).
CoverageReport coverage_report_hh(const PrimeField& f, const HilbertCube& c);

}  // namespace hc

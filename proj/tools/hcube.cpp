// hcube: command-line surface over the cube / set-algebra / character-sum
// library. Every subcommand maps 1:1 onto a library operation; exit code 0 on
// success, 1 on operation errors, 2 on usage errors.

#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hc/bounds.hpp"
#include "hc/cube.hpp"
#include "hc/error.hpp"
#include "hc/field.hpp"
#include "hc/lab.hpp"
#include "hc/parse.hpp"
#include "hc/setalg.hpp"
#include "hc/sums.hpp"

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  std::uint32_t p = 0;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;

  std::string cube_lit;
  std::string set_a, set_b, set_u, set_v, set_x, set_y;
  double big_r = 2.0;
  std::uint32_t j = 1;
  std::uint32_t lambda = 1;
  unsigned r = 2;
  bool all_indices = false;
  std::string kind;
  std::string mode = "auto";
  std::uint32_t trials = 50;
  std::uint32_t d_max = 8;
  std::uint32_t order = 1;
  unsigned workers = 1;
  unsigned restarts = 8;
  unsigned r_max = 8;
  bool do_optimize_r = false;
  std::string r_list = "1,2,3";
  std::string sizes = "4,8,16,32";
  std::string ab_exp, h_exp, p_exp;
  std::string eta = "1/100", gexp = "3/4";
  std::uint64_t card_a = 0, card_b = 0, card_h = 0;
  std::string config_path;
  int hp_kind = 1;
};

bool text_mode(const Options& o) { return o.format == "text"; }

void emit_line(const Options& o, const std::string& text_line, const json& j) {
  if (text_mode(o))
    std::cout << text_line << "\n";
  else
    std::cout << j.dump() << "\n";
}

void write_or_print(const Options& o, const std::string& payload) {
  if (o.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw hc::Error("cannot open output file " + o.out);
  f << payload;
}

json sum_eval_json(const hc::SumEvaluation& e, const char* key, std::uint64_t idx) {
  return json{{key, idx},
              {"re", e.value.real()},
              {"im", e.value.imag()},
              {"abs", e.abs_value},
              {"bbs_bound", e.bound_bbs},
              {"shape_bound_r", e.bound_karatsuba_shape},
              {"r", e.r},
              {"ratio", e.ratio_to_shape}};
}

std::string sum_eval_csv_row(const hc::SumEvaluation& e, std::uint64_t idx) {
  return std::to_string(idx) + "," + fmt(e.value.real()) + "," + fmt(e.value.imag()) + "," +
         fmt(e.abs_value) + "," + fmt(e.bound_bbs) + "," + fmt(e.bound_karatsuba_shape) + "," +
         fmt(e.ratio_to_shape);
}

void print_sum_eval(const Options& o, const hc::SumEvaluation& e) {
  if (text_mode(o)) {
    std::cout << "value = " << fmt(e.value.real()) << " + " << fmt(e.value.imag()) << "i\n"
              << "abs = " << fmt(e.abs_value) << "\n"
              << "card_u = " << e.u_card << ", card_v = " << e.v_card << "\n"
              << "bbs_bound = " << fmt(e.bound_bbs) << "\n"
              << "shape_bound (r=" << e.r << ") = " << fmt(e.bound_karatsuba_shape) << "\n"
              << "ratio_to_shape = " << fmt(e.ratio_to_shape) << "\n";
  } else {
    std::cout << sum_eval_json(e, "index", 0).dump() << "\n";
  }
}

int run_char_or_exp_sum(const Options& o, bool multiplicative) {
  const hc::PrimeField f(o.p, hc::TableMode::Require);
  const hc::FpSet u = hc::parse_set(f, o.set_u);
  const hc::FpSet v = hc::parse_set(f, o.set_v);
  const char* key = multiplicative ? "j" : "lambda";
  if (!o.all_indices) {
    const hc::SumEvaluation e = multiplicative
                                    ? hc::double_char_sum(f, hc::CharacterIndex{o.j}, u, v, o.r)
                                    : hc::double_recip_exp_sum(f, o.lambda, u, v, o.r);
    print_sum_eval(o, e);
    return 0;
  }
  std::string csv = std::string(key) + ",re,im,abs,bbs_bound,shape_bound_r,ratio\n";
  const std::uint32_t hi = multiplicative ? f.p() - 1 : f.p();
  for (std::uint32_t i = 1; i < hi; ++i) {
    const hc::SumEvaluation e = multiplicative
                                    ? hc::double_char_sum(f, hc::CharacterIndex{i}, u, v, o.r)
                                    : hc::double_recip_exp_sum(f, i, u, v, o.r);
    if (o.format == "jsonl")
      std::cout << sum_eval_json(e, key, i).dump() << "\n";
    else
      csv += sum_eval_csv_row(e, i) + "\n";
  }
  if (o.format != "jsonl") write_or_print(o, csv);
  return 0;
}

void print_bound_report(const Options& o, const hc::BoundReport& rep) {
  const char* kind_name = rep.kind == hc::BoundKind::theorem11 ? "theorem11"
                          : rep.kind == hc::BoundKind::cor12   ? "cor12"
                                                               : "cor13";
  if (!text_mode(o)) {
    json j{{"kind", kind_name}, {"trivial", rep.trivial}, {"note", rep.note}};
    if (rep.p) j["p"] = rep.p;
    if (rep.card_a) j["card_a"] = rep.card_a;
    if (rep.card_b) j["card_b"] = rep.card_b;
    if (rep.card_h) j["card_h"] = rep.card_h;
    if (rep.r) j["r"] = rep.r;
    if (rep.rhs_exponent)
      j["rhs_exponent"] = rep.rhs_exponent->exponent.str();
    else
      j["rhs"] = rep.rhs_value;
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << "kind: " << kind_name << "\n";
  if (rep.p) std::cout << "p: " << rep.p << "\n";
  if (rep.card_a) std::cout << "#A: " << rep.card_a << "\n";
  if (rep.card_b) std::cout << "#B: " << rep.card_b << "\n";
  if (rep.card_h) std::cout << "#H: " << rep.card_h << "\n";
  if (rep.r) std::cout << "r: " << rep.r << "\n";
  if (rep.rhs_exponent) {
    std::cout << "exponent: " << rep.rhs_exponent->exponent.str() << "\n";
    std::cout << "rhs: " << rep.rhs_exponent->str() << "\n";
  } else {
    std::cout << "rhs: " << fmt(rep.rhs_value) << "\n";
  }
  std::cout << "trivial: " << (rep.trivial ? "yes" : "no") << "\n";
  std::cout << "note: " << rep.note << "\n";
}

int run_bound(const Options& o) {
  std::string target, expr;
  if (!o.p_exp.empty()) {
    const auto eq = o.p_exp.find('=');
    if (eq == std::string::npos) throw hc::ParseError("--p-exp needs target=expression");
    target = o.p_exp.substr(0, eq);
    expr = o.p_exp.substr(eq + 1);
  }
  const bool symbolic = !target.empty() || !o.ab_exp.empty() || !o.h_exp.empty();

  if (o.kind == "theorem11") {
    if (symbolic) {
      if (o.card_a || o.card_b)
        throw hc::ParseError("mixed concrete/exponent inputs are not accepted");
      std::string e = !o.ab_exp.empty() ? o.ab_exp : expr;
      if (!o.ab_exp.empty() || target == "a*b" || target == "ab") {
        print_bound_report(o, hc::theorem_bound_symbolic(hc::parse_eps_affine(e), o.r));
        return 0;
      }
      throw hc::ParseError("theorem11 exponent input must be a*b=<expr>");
    }
    if (o.do_optimize_r) {
      const auto [best_r, rep] = hc::optimize_r(o.p, o.card_a, o.card_b, o.r_max);
      if (text_mode(o)) std::cout << "optimal r: " << best_r << "\n";
      print_bound_report(o, rep);
      return 0;
    }
    print_bound_report(o, hc::theorem_bound(o.p, o.card_a, o.card_b, o.r));
    return 0;
  }
  if (o.kind == "cor12") {
    if (symbolic) {
      if (o.card_h) throw hc::ParseError("mixed concrete/exponent inputs are not accepted");
      std::string e = !o.h_exp.empty() ? o.h_exp : expr;
      if (!o.h_exp.empty() || target == "h") {
        print_bound_report(o, hc::cor12_bound_symbolic(hc::parse_eps_affine(e)));
        return 0;
      }
      throw hc::ParseError("cor12 exponent input must be h=<expr>");
    }
    print_bound_report(o, hc::cor12_bound(o.p, o.card_h));
    return 0;
  }
  if (o.kind == "cor13") {
    const auto t = hc::cor13_threshold(o.p);
    if (text_mode(o)) {
      std::cout << "kind: cor13\n"
                << "p: " << o.p << "\n"
                << "threshold: C * " << t.threshold.str() << " = " << fmt(t.value)
                << " (C unspecified)\n"
                << "coset complement floor: (p+1)/2 = " << t.complement_floor << "\n";
    } else {
      std::cout << json{{"kind", "cor13"},
                        {"p", o.p},
                        {"threshold_exponent", "11/12"},
                        {"threshold_value", t.value},
                        {"complement_floor", t.complement_floor}}
                       .dump()
                << "\n";
    }
    return 0;
  }
  throw hc::ParseError("unknown bound kind '" + o.kind + "'");
}

int run_hp_analysis(const Options& o) {
  if (o.hp_kind == 1) {
    const hc::Rational grid_min = hc::hp1_grid_min_exponent();
    const auto rep = hc::hp_bound1_analysis(hc::parse_rational(o.eta), hc::parse_rational(o.gexp));
    if (text_mode(o)) {
      std::cout << "min exponent = " << grid_min.str() << " (trivial: exceeds 1)\n"
                << "chain: " << rep.intermediate << " >= p^(" << rep.chain_exponent.str()
                << ") at #G = p^(" << rep.g_exponent.str() << ")\n"
                << "with eta = " << rep.eta.str() << ": exponent "
                << rep.exponent_with_eta.str() << "\n"
                << "verdict: always trivial (every admissible exponent >= 47/32 > 1)\n";
    } else {
      std::cout << json{{"kind", 1},
                        {"grid_min_exponent", grid_min.str()},
                        {"chain_exponent", rep.chain_exponent.str()},
                        {"exponent_with_eta", rep.exponent_with_eta.str()},
                        {"always_trivial", rep.always_trivial}}
                       .dump()
                << "\n";
    }
    return 0;
  }
  if (o.hp_kind == 2) {
    const std::uint32_t p = o.p ? o.p : 101;
    const std::uint64_t ca = o.card_a ? o.card_a : p;
    const std::uint64_t cb = o.card_b ? o.card_b : p;
    const auto rep = hc::hp_bound2_analysis(p, ca, cb);
    if (text_mode(o)) {
      std::cout << "rhs = 16 p^3 / (#A #B) = " << fmt(rep.rhs_value) << "\n"
                << "floor: 16p = " << fmt(rep.floor_16p)
                << (rep.half_square_case ? " (and #A#B <= p^2/2, so rhs >= 32p)" : "") << "\n"
                << "verdict: always trivial (rhs >= 16p > p)\n";
    } else {
      std::cout << json{{"kind", 2},
                        {"p", rep.p},
                        {"card_a", rep.card_a},
                        {"card_b", rep.card_b},
                        {"rhs", rep.rhs_value},
                        {"floor_16p", rep.floor_16p},
                        {"half_square_case", rep.half_square_case},
                        {"always_trivial", rep.always_trivial}}
                       .dump()
                << "\n";
    }
    return 0;
  }
  throw hc::ParseError("hp-analysis kind must be 1 or 2");
}

hc::ExperimentConfig build_config(const Options& o) {
  hc::ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = hc::ExperimentConfig::from_file(o.config_path);
  if (o.p) cfg.p = o.p;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.d_max = o.d_max;
  cfg.workers = o.workers;
  cfg.restarts = o.restarts;
  if (!o.r_list.empty()) cfg.r_list = hc::parse_unsigned_list(o.r_list);
  if (!o.sizes.empty()) cfg.set_size_grid = hc::parse_u32_list(o.sizes);
  if (!o.kind.empty())
    cfg.sweep_kind = o.kind == "exp" ? hc::SweepKind::RecipExpSum : hc::SweepKind::CharSum;
  if (!o.out.empty()) cfg.output_path = o.out;
  return cfg;
}

hc::SearchMode parse_mode(const std::string& mode) {
  if (mode == "auto") return hc::SearchMode::Auto;
  if (mode == "exhaustive") return hc::SearchMode::Exhaustive;
  if (mode == "heuristic") return hc::SearchMode::Heuristic;
  throw hc::ParseError("mode must be auto, exhaustive or heuristic");
}

void print_search_result(const Options& o, const hc::SearchResult& res) {
  if (text_mode(o)) {
    std::cout << "best_cube: " << hc::format_cube(res.best_cube) << "\n"
              << "best_card: " << res.best_card << "\n"
              << "mode: " << (res.exhaustive ? "exhaustive" : "heuristic") << "\n"
              << "bound_value: " << fmt(res.bound_value) << "\n"
              << "ratio: " << fmt(res.ratio) << "\n";
  } else {
    std::cout << json{{"best_cube", hc::format_cube(res.best_cube)},
                      {"best_card", res.best_card},
                      {"exhaustive", res.exhaustive},
                      {"bound_value", res.bound_value},
                      {"ratio", res.ratio}}
                     .dump()
              << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert cubes in F_p: set algebra, character sums, bounds, experiments"};
  app.require_subcommand(1);

  Options o;
  std::function<int()> action;

  auto add_common = [&](CLI::App* cmd, bool needs_p = true) {
    if (needs_p) cmd->add_option("--p", o.p, "prime modulus")->required();
    cmd->add_option("--seed", o.seed, "PRNG seed");
    cmd->add_option("--format", o.format, "output format: text, csv, jsonl")
        ->check(CLI::IsMember({"text", "csv", "jsonl"}));
    cmd->add_option("--out", o.out, "output file (default stdout)");
  };

  // ---- cube ops ----
  auto* c_expand = app.add_subcommand("expand", "expand a cube literal into its element set");
  add_common(c_expand);
  c_expand->add_option("--cube", o.cube_lit, "cube literal a0;a1,...,ad")->required();
  c_expand->callback([&] {
    action = [&] {
      const hc::PrimeField f(o.p);
      const hc::FpSet s = hc::expand(f, hc::parse_cube(o.cube_lit));
      emit_line(o, hc::format_set(s), json{{"set", s.elements()}, {"card", s.card()}});
      return 0;
    };
  });

  auto* c_prefix = app.add_subcommand("prefix", "cardinalities of the prefix cubes H_0..H_d");
  add_common(c_prefix);
  c_prefix->add_option("--cube", o.cube_lit)->required();
  c_prefix->callback([&] {
    action = [&] {
      const hc::PrimeField f(o.p);
      const auto cards = hc::prefix_cardinalities(f, hc::parse_cube(o.cube_lit));
      std::string line;
      for (std::size_t i = 0; i < cards.size(); ++i)
        line += (i ? "," : "") + std::to_string(cards[i]);
      emit_line(o, line, json{{"prefix_cards", cards}});
      return 0;
    };
  });

  auto* c_part = app.add_subcommand("partition", "split a cube into U + V per the partition lemma");
  add_common(c_part);
  c_part->add_option("--cube", o.cube_lit)->required();
  c_part->add_option("--R", o.big_r, "target parameter in [2, H/2]")->required();
  c_part->callback([&] {
    action = [&] {
      const hc::PrimeField f(o.p);
      const auto part = hc::partition(f, hc::parse_cube(o.cube_lit), o.big_r);
      if (text_mode(o)) {
        std::cout << "split_index: " << part.split_index << "\n"
                  << "U: " << hc::format_set(part.u) << "\n"
                  << "V: " << hc::format_set(part.v) << "\n"
                  << "cards: " << part.u.card() << " " << part.v.card() << "\n";
      } else {
        std::cout << json{{"split_index", part.split_index},
                          {"u", part.u.elements()},
                          {"v", part.v.elements()}}
                         .dump()
                  << "\n";
      }
      return 0;
    };
  });

  // ---- set algebra ----
  auto add_setop = [&](const char* name, const char* help, auto fn) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd);
    cmd->add_option("--a", o.set_a, "first set literal")->required();
    cmd->add_option("--b", o.set_b, "second set literal");
    cmd->callback([&, fn] {
      action = [&, fn] {
        const hc::PrimeField f(o.p);
        const hc::FpSet result = fn(f);
        emit_line(o, hc::format_set(result),
                  json{{"set", result.elements()}, {"card", result.card()}});
        return 0;
      };
    });
    return cmd;
  };

  add_setop("productset", "product set A*B", [&](const hc::PrimeField& f) {
    return hc::product_set(f, hc::parse_set(f, o.set_a), hc::parse_set(f, o.set_b));
  })->get_option("--b")->required();
  add_setop("recipsumset", "reciprocal sum set (A+B)^{-1}", [&](const hc::PrimeField& f) {
    return hc::reciprocal_sumset(f, hc::parse_set(f, o.set_a), hc::parse_set(f, o.set_b));
  })->get_option("--b")->required();
  add_setop("ratioset", "ratio set A*B^{-1}", [&](const hc::PrimeField& f) {
    return hc::ratio_set(f, hc::parse_set(f, o.set_a), hc::parse_set(f, o.set_b));
  })->get_option("--b")->required();
  add_setop("complement", "complement F_p \\ A", [&](const hc::PrimeField& f) {
    return hc::complement(hc::parse_set(f, o.set_a));
  });

  auto* c_count = app.add_subcommand("count", "count solutions of u+v = ab or (u+v)^{-1} = a+b");
  add_common(c_count);
  c_count->add_option("--kind", o.kind, "product or reciprocal")
      ->required()
      ->check(CLI::IsMember({"product", "reciprocal"}));
  c_count->add_option("--a", o.set_a)->required();
  c_count->add_option("--b", o.set_b)->required();
  c_count->add_option("--u", o.set_u)->required();
  c_count->add_option("--v", o.set_v)->required();
  c_count->callback([&] {
    action = [&] {
      const hc::PrimeField f(o.p);
      const auto a = hc::parse_set(f, o.set_a);
      const auto b = hc::parse_set(f, o.set_b);
      const auto u = hc::parse_set(f, o.set_u);
      const auto v = hc::parse_set(f, o.set_v);
      const std::uint64_t n = o.kind == "product" ? hc::count_solutions_product(f, a, b, u, v)
                                                  : hc::count_solutions_reciprocal(f, a, b, u, v);
      emit_line(o, std::to_string(n), json{{"count", n}});
      return 0;
    };
  });

  // ---- sums ----
  auto* c_char = app.add_subcommand("charsum", "double multiplicative character sum over U, V");
  add_common(c_char);
  c_char->add_option("--j", o.j, "character index (0 = principal)");
  c_char->add_option("--u", o.set_u)->required();
  c_char->add_option("--v", o.set_v)->required();
  c_char->add_option("--r", o.r, "shape bound parameter");
  c_char->add_flag("--all", o.all_indices, "emit rows for every non-principal character");
  c_char->callback([&] {
    action = [&] { return run_char_or_exp_sum(o, true); };
  });

  auto* c_exp = app.add_subcommand("expsum", "double reciprocal exponential sum over U, V");
  add_common(c_exp);
  c_exp->add_option("--lambda", o.lambda, "additive character parameter (nonzero)");
  c_exp->add_option("--u", o.set_u)->required();
  c_exp->add_option("--v", o.set_v)->required();
  c_exp->add_option("--r", o.r, "shape bound parameter");
  c_exp->add_flag("--all", o.all_indices, "emit rows for every nonzero lambda");
  c_exp->callback([&] {
    action = [&] { return run_char_or_exp_sum(o, false); };
  });

  auto* c_ms = app.add_subcommand("meansquare", "sum over all characters of |S_A(chi)|^2");
  add_common(c_ms);
  c_ms->add_option("--a", o.set_a)->required();
  c_ms->callback([&] {
    action = [&] {
      const hc::PrimeField f(o.p, hc::TableMode::Require);
      const auto a = hc::parse_set(f, o.set_a);
      const double value = hc::mean_square_char(f, a);
      const double expect = static_cast<double>(f.p() - 1) * a.card();
      emit_line(o, "value = " + fmt(value) + "\nexpected (p-1)#A = " + fmt(expect),
                json{{"value", value}, {"expected", expect}});
      return 0;
    };
  });

  auto* c_cauchy = app.add_subcommand("cauchy", "Cauchy bound check on S_A, S_B over X*");
  add_common(c_cauchy);
  c_cauchy->add_option("--a", o.set_a)->required();
  c_cauchy->add_option("--b", o.set_b)->required();
  c_cauchy->callback([&] {
    action = [&] {
      const hc::PrimeField f(o.p, hc::TableMode::Require);
      const auto rep =
          hc::cauchy_bound_check(f, hc::parse_set(f, o.set_a), hc::parse_set(f, o.set_b));
      emit_line(o,
                "S = " + fmt(rep.s) + "\nS^2 = " + fmt(rep.s_squared) +
                    "\np^2 #A #B = " + fmt(rep.rhs) + "\nholds: " + (rep.holds ? "yes" : "no"),
                json{{"s", rep.s}, {"s_squared", rep.s_squared}, {"rhs", rep.rhs},
                     {"holds", rep.holds}});
      return rep.holds ? 0 : 1;
    };
  });

  // ---- bounds ----
  auto* c_bound = app.add_subcommand("bound", "evaluate a bound expression");
  c_bound->set_help_flag("--help", "print help");  // frees --h for the cardinality
  add_common(c_bound, false);
  c_bound->add_option("--kind", o.kind, "theorem11, cor12 or cor13")->required();
  c_bound->add_option("--p", o.p, "prime modulus (concrete mode)");
  c_bound->add_option("--a", o.card_a, "#A (concrete mode)");
  c_bound->add_option("--b", o.card_b, "#B (concrete mode)");
  c_bound->add_option("--h", o.card_h, "#H (concrete mode, cor12)");
  c_bound->add_option("--r", o.r, "theorem parameter r");
  c_bound->add_option("--ab-exp", o.ab_exp, "#A#B as p^(expr), exponent mode");
  c_bound->add_option("--h-exp", o.h_exp, "#H as p^(expr), exponent mode");
  c_bound->add_option("--p-exp", o.p_exp, "target=expr form, e.g. \"a*b=15/8+e/2\"");
  c_bound->add_flag("--optimize-r", o.do_optimize_r, "minimize over r in [1, r-max]");
  c_bound->add_option("--r-max", o.r_max, "upper limit for --optimize-r");
  c_bound->callback([&] {
    action = [&] { return run_bound(o); };
  });

  auto* c_hp = app.add_subcommand("hp-analysis", "triviality analysis of the prior bounds");
  add_common(c_hp, false);
  c_hp->add_option("--kind", o.hp_kind, "1 or 2")->required();
  c_hp->add_option("--eta", o.eta, "additive-energy parameter (kind 1)");
  c_hp->add_option("--gexp", o.gexp, "#G as p^(gexp), kind 1");
  c_hp->add_option("--p", o.p, "prime (kind 2)");
  c_hp->add_option("--a", o.card_a, "#A (kind 2)");
  c_hp->add_option("--b", o.card_b, "#B (kind 2)");
  c_hp->callback([&] {
    action = [&] { return run_hp_analysis(o); };
  });

  // ---- lab ----
  auto* c_verify = app.add_subcommand("verify", "run every module invariant on random instances");
  add_common(c_verify);
  c_verify->add_option("--trials", o.trials);
  c_verify->add_option("--dmax", o.d_max);
  c_verify->add_option("--workers", o.workers);
  c_verify->add_option("--config", o.config_path, "key=value config file");
  c_verify->callback([&] {
    action = [&] {
      const auto rep = hc::verify_suite(build_config(o));
      write_or_print(o, rep.text());
      return rep.all_pass ? 0 : 1;
    };
  });

  auto* c_sweep = app.add_subcommand("sweep", "CSV sweep of sum moduli against their bounds");
  add_common(c_sweep);
  c_sweep->add_option("--trials", o.trials);
  c_sweep->add_option("--sizes", o.sizes, "comma list of set sizes");
  c_sweep->add_option("--r-list", o.r_list, "comma list of r values");
  c_sweep->add_option("--kind", o.kind, "char or exp")
      ->check(CLI::IsMember({"char", "exp"}));
  c_sweep->add_option("--workers", o.workers);
  c_sweep->add_option("--config", o.config_path, "key=value config file");
  c_sweep->callback([&] {
    action = [&] {
      write_or_print(o, hc::sweep_charsum_ratios(build_config(o)));
      return 0;
    };
  });

  auto* c_search = app.add_subcommand("search", "largest cube avoiding A*B or (A+B)^{-1}");
  add_common(c_search);
  c_search->add_option("--a", o.set_a)->required();
  c_search->add_option("--b", o.set_b)->required();
  c_search->add_option("--kind", o.kind, "avoid-product or avoid-reciprocal")
      ->required()
      ->check(CLI::IsMember({"avoid-product", "avoid-reciprocal"}));
  c_search->add_option("--dmax", o.d_max);
  c_search->add_option("--r-list", o.r_list);
  c_search->add_option("--mode", o.mode)->check(CLI::IsMember({"auto", "exhaustive", "heuristic"}));
  c_search->add_option("--restarts", o.restarts);
  c_search->callback([&] {
    action = [&] {
      const hc::PrimeField f(o.p);
      const auto res = hc::search_max_avoiding_cube(
          f, hc::parse_set(f, o.set_a), hc::parse_set(f, o.set_b),
          o.kind == "avoid-product" ? hc::ConstraintKind::AvoidProduct
                                    : hc::ConstraintKind::AvoidReciprocal,
          o.d_max, hc::parse_unsigned_list(o.r_list), parse_mode(o.mode), o.seed, o.restarts);
      print_search_result(o, res);
      return 0;
    };
  });

  auto* c_coset = app.add_subcommand("coset-search", "largest cube inside a coset lambda*G");
  add_common(c_coset);
  c_coset->add_option("--t", o.order, "subgroup order (divides p-1, proper)")->required();
  c_coset->add_option("--lambda", o.lambda, "coset scalar")->required();
  c_coset->add_option("--dmax", o.d_max);
  c_coset->add_option("--mode", o.mode)->check(CLI::IsMember({"auto", "exhaustive", "heuristic"}));
  c_coset->add_option("--restarts", o.restarts);
  c_coset->callback([&] {
    action = [&] {
      const hc::PrimeField f(o.p);
      const auto res = hc::cube_in_coset_search(f, f.subgroup_of_order(o.order), o.lambda,
                                                o.d_max, parse_mode(o.mode), o.seed, o.restarts);
      print_search_result(o, res);
      return 0;
    };
  });

  auto* c_cov = app.add_subcommand("coverage", "complement sizes of H*H and H*H^{-1}");
  add_common(c_cov);
  c_cov->add_option("--cube", o.cube_lit)->required();
  c_cov->callback([&] {
    action = [&] {
      const hc::PrimeField f(o.p);
      const auto rep = hc::coverage_report_hh(f, hc::parse_cube(o.cube_lit));
      emit_line(o,
                "#H = " + std::to_string(rep.card_h) + "\n#E = " + std::to_string(rep.card_e) +
                    "\n#F = " + std::to_string(rep.card_f) +
                    "\ncor12 rhs = " + fmt(rep.cor12_rhs) +
                    "\nidentities: " + (rep.identities_hold ? "hold" : "VIOLATED"),
                json{{"card_h", rep.card_h},
                     {"card_e", rep.card_e},
                     {"card_f", rep.card_f},
                     {"cor12_rhs", rep.cor12_rhs},
                     {"identities_hold", rep.identities_hold}});
      return rep.identities_hold ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const hc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

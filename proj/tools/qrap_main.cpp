// Command-line front end: family analysis, exact counting sweeps, asymptotic
// verification, character-sum experiments, admissible-tuple generation, canned
// fixtures, and per-prime statistics. All outputs are CSV/JSON files suitable
// for offline diffing; byte-identical across worker counts.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "qrap/asymptotics.hpp"
#include "qrap/counting.hpp"
#include "qrap/fixtures.hpp"
#include "qrap/io.hpp"
#include "qrap/parallel.hpp"
#include "qrap/signatures.hpp"
#include "qrap/structure.hpp"
#include "qrap/weil.hpp"

namespace {

using namespace qrap;

u64 global_prime_cap() {
  if (const char* env = std::getenv("QRAP_PRIME_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v < 3) {
      throw std::invalid_argument("QRAP_PRIME_CAP must be an integer >= 3");
    }
    return v;
  }
  return kDefaultPrimeCap;
}

std::vector<int> parse_sign_vector(const std::string& text) {
  if (text == "+1") return {1};
  if (text == "-1") return {-1};
  std::vector<int> out;
  for (char c : text) {
    if (c == '+') {
      out.push_back(1);
    } else if (c == '-') {
      out.push_back(-1);
    } else {
      throw std::invalid_argument("sign vector must be '+1', '-1', or a string of +/-");
    }
  }
  if (out.empty()) throw std::invalid_argument("empty sign vector");
  return out;
}

int parse_single_sign(const std::string& text) {
  if (text == "+1" || text == "+") return 1;
  if (text == "-1" || text == "-") return -1;
  throw std::invalid_argument("sign must be +1 or -1");
}

std::vector<i64> parse_int_list(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

SupportSide parse_side(const std::string& text) {
  if (text == "residue") return SupportSide::residue;
  if (text == "nonresidue") return SupportSide::nonresidue;
  throw std::invalid_argument("side must be residue or nonresidue");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    io::write_text(path, text);
  }
}

void emit_json(const std::string& path, const io::json& j) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    io::write_json(path, j);
  }
}

struct CommonRange {
  u64 pmin = 3;
  u64 pmax = 1000;
  bool sample_all = false;
  int per_decade = 200;
  int workers = 1;

  void attach(CLI::App* cmd, bool default_all) {
    sample_all = default_all;
    cmd->add_option("--pmin", pmin, "Lower end of the prime range")->capture_default_str();
    cmd->add_option("--pmax", pmax, "Upper end of the prime range")->capture_default_str();
    cmd->add_flag("--all,!--stride", sample_all,
                  default_all ? "Sweep every prime (default) vs log-uniform sampling"
                              : "Sweep every prime instead of log-uniform sampling");
    cmd->add_option("--per-decade", per_decade, "Sampled primes per decade in stride mode")
        ->capture_default_str();
    cmd->add_option("--workers", workers, "Worker threads (output is worker-count independent)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  SampleSpec sample() const { return {sample_all, per_decade}; }
};

// ---- analyze ----------------------------------------------------------

struct AnalyzeArgs {
  std::string spec_path;
  std::string out_path;
};

int run_analyze(const AnalyzeArgs& a) {
  const FamilySpec spec = io::load_family(a.spec_path);
  const StructureReport report = analyze(as_normalized(spec));
  emit_json(a.out_path, io::structure_to_json(report));
  return 0;
}

// ---- count ------------------------------------------------------------

struct CountArgs {
  std::string spec_path;
  std::string mode = "auto";
  std::string eps = "+1";
  std::string eta;
  std::string side = "residue";
  std::string out_path;
  CommonRange range;
};

int run_count(const CountArgs& a) {
  const FamilySpec spec = io::load_family(a.spec_path);
  std::string mode = a.mode;
  if (mode == "auto") mode = spec.kind == FamilyKind::shift ? "pattern" : "constant";

  const u64 cap = global_prime_cap();
  const std::vector<u64> primes = sample_primes(a.range.pmin, a.range.pmax, a.range.sample(), cap);

  const NormalizedFamily family = as_normalized(spec);
  std::vector<int> eps_vec;
  std::vector<int> eta_vec;
  int eps_const = 1;
  SupportSide side = parse_side(a.side);

  if (mode == "constant") {
    eps_const = parse_single_sign(a.eps);
  } else if (mode == "pattern") {
    eps_vec = parse_sign_vector(a.eps);
  } else if (mode == "eta") {
    if (a.eta.empty()) throw std::invalid_argument("mode eta requires --eta");
    eta_vec = parse_sign_vector(a.eta);
  } else if (mode != "support") {
    throw std::invalid_argument("mode must be constant|pattern|support|eta");
  }

  const auto records = parallel_map_indexed<CountRecord>(
      primes.size(), a.range.workers, [&](std::size_t i) {
        const u64 p = primes[i];
        const ResidueClassifier c(p);
        CountRecord rec;
        rec.p = p;
        rec.mode = mode;
        if (mode == "constant") {
          rec.signs = eps_const == 1 ? "+1" : "-1";
          rec.count = count_constant_sign(c, family, eps_const);
        } else if (mode == "eta") {
          for (int v : eta_vec) rec.signs += v == 1 ? '+' : '-';
          rec.count = count_eta(c, family, eta_vec);
        } else if (mode == "pattern") {
          for (int v : eps_vec) rec.signs += v == 1 ? '+' : '-';
          if (spec.kind == FamilyKind::shift) {
            rec.count = count_pattern(c, spec.Z, eps_vec);
          } else if (spec.kind == FamilyKind::ap && spec.a.size() == 1) {
            rec.count = count_ap1_pattern(c, spec.a[0], spec.b[0], spec.s, eps_vec);
          } else {
            throw std::invalid_argument("pattern mode needs a shift family or a single-row ap family");
          }
        } else {
          rec.signs = support_side_name(side);
          if (spec.kind == FamilyKind::shift) {
            rec.count = count_support(c, spec.Z, side);
          } else if (spec.kind == FamilyKind::ap && spec.a.size() == 1) {
            rec.count = count_ap1_support(c, spec.a[0], spec.b[0], spec.s, side);
          } else {
            throw std::invalid_argument("support mode needs a shift family or a single-row ap family");
          }
        }
        return rec;
      });

  emit(a.out_path, io::count_csv(records));
  return 0;
}

// ---- verify -----------------------------------------------------------

struct VerifyArgs {
  std::string spec_path;
  std::string union_b;
  i64 s = 0;
  std::string mode = "auto";
  std::string eps = "+1";
  std::string side = "residue";
  std::string out_path;
  std::string summary_path;
  bool assert_bounds = false;
  CommonRange range;
};

Target build_target(const VerifyArgs& a) {
  if (!a.union_b.empty()) {
    const std::vector<i64> b = parse_int_list(a.union_b);
    if (a.s < 1) throw std::invalid_argument("--union-b requires --s >= 1");
    if (a.mode == "support") return MultiSupportTarget{b, a.s, parse_side(a.side)};
    const i64 g = gamma_value(b, a.s, GammaMode::brute);
    std::vector<int> eps = a.eps == "+1" ? std::vector<int>(g, 1)
                         : a.eps == "-1" ? std::vector<int>(g, -1)
                                         : parse_sign_vector(a.eps);
    return MultiPatternTarget{b, a.s, std::move(eps)};
  }

  const FamilySpec spec = io::load_family(a.spec_path);
  std::string mode = a.mode;
  if (mode == "auto") mode = spec.kind == FamilyKind::shift ? "pattern" : "constant";

  if (mode == "constant") {
    return ConstantSignTarget{as_normalized(spec), parse_single_sign(a.eps)};
  }
  if (spec.kind == FamilyKind::shift) {
    if (mode == "support") return ShiftSupportTarget{spec.Z, parse_side(a.side)};
    const std::size_t r = spec.Z.size();
    std::vector<int> eps = a.eps == "+1" ? std::vector<int>(r, 1)
                         : a.eps == "-1" ? std::vector<int>(r, -1)
                                         : parse_sign_vector(a.eps);
    return ShiftPatternTarget{spec.Z, std::move(eps)};
  }
  if (spec.kind == FamilyKind::ap && spec.a.size() == 1) {
    if (mode == "support") return Ap1SupportTarget{spec.a[0], spec.b[0], spec.s, parse_side(a.side)};
    std::vector<int> eps = a.eps == "+1" ? std::vector<int>(spec.s, 1)
                         : a.eps == "-1" ? std::vector<int>(spec.s, -1)
                                         : parse_sign_vector(a.eps);
    return Ap1PatternTarget{spec.a[0], spec.b[0], spec.s, std::move(eps)};
  }
  throw std::invalid_argument("pattern/support verification needs a shift or single-row ap family");
}

int run_verify(const VerifyArgs& a) {
  const u64 cap = global_prime_cap();
  const Target target = build_target(a);
  const VerifyReport report =
      verify_range(target, a.range.pmin, a.range.pmax, a.range.sample(), a.range.workers, cap);

  if (!a.out_path.empty()) io::write_text(a.out_path, io::verify_csv(report));
  const io::json summary = io::verify_summary_json(target, report);
  if (!a.summary_path.empty()) {
    io::write_json(a.summary_path, summary);
  }
  if (a.out_path.empty() && a.summary_path.empty()) {
    std::cout << io::verify_csv(report);
  }
  std::cout << summary.dump(2) << "\n";

  if (a.assert_bounds &&
      (report.summary.violations > 0 || !report.summary.pi_minus_all_zero)) {
    return 1;
  }
  return 0;
}

// ---- weil -------------------------------------------------------------

struct WeilArgs {
  u64 p = 0;
  std::string shifts;
  i64 range_end = -1;  // -1 = complete
  int sets = 0;
  int max_degree = 4;
  u64 seed = 1;
  std::string out_path;
  bool assert_bounds = false;
  CommonRange range;
};

int run_weil(const WeilArgs& a) {
  const u64 cap = global_prime_cap();
  std::vector<CharSumResult> results;

  if (a.p != 0) {
    const ResidueClassifier c(a.p);
    const std::vector<i64> shifts = parse_int_list(a.shifts);
    std::optional<u64> end;
    if (a.range_end >= 0) end = static_cast<u64>(a.range_end);
    results.push_back(char_sum(c, shifts, end));
  } else {
    if (a.sets < 1) throw std::invalid_argument("sweep mode requires --sets >= 1 (or use --p)");
    if (a.max_degree < 1 || a.max_degree > 64) {
      throw std::invalid_argument("--max-degree must lie in [1, 64]");
    }
    const std::vector<u64> primes = sample_primes(a.range.pmin, a.range.pmax, a.range.sample(), cap);
    const auto per_prime = parallel_map_indexed<std::vector<CharSumResult>>(
        primes.size(), a.range.workers, [&](std::size_t i) {
          const u64 p = primes[i];
          const ResidueClassifier c(p);
          std::mt19937_64 rng(a.seed ^ (p * 0x9e3779b97f4a7c15ULL));
          std::vector<CharSumResult> rows;
          for (int n = 0; n < a.sets; ++n) {
            const int d = 1 + static_cast<int>(rng() % static_cast<u64>(a.max_degree));
            std::set<i64> shifts;
            while (static_cast<int>(shifts.size()) < d) {
              shifts.insert(static_cast<i64>(rng() % p));
            }
            const std::vector<i64> sv(shifts.begin(), shifts.end());
            rows.push_back(char_sum(c, sv, std::nullopt));
            rows.push_back(char_sum(c, sv, rng() % p));
          }
          return rows;
        });
    for (const auto& rows : per_prime) results.insert(results.end(), rows.begin(), rows.end());
  }

  emit(a.out_path, io::weil_csv(results));
  if (a.assert_bounds) {
    for (const CharSumResult& r : results) {
      if (!r.within_bound) return 1;
    }
  }
  return 0;
}

// ---- generate ---------------------------------------------------------

struct GenerateArgs {
  std::string d;
  i64 a1 = 1;
  i64 b1 = 1;
  std::string t;
  i64 s = 1;
  std::string out_path;
};

int run_generate(const GenerateArgs& a) {
  const FamilySpec spec =
      generate_admissible(parse_int_list(a.d), a.a1, a.b1, parse_int_list(a.t), a.s);
  emit_json(a.out_path, io::family_to_json(spec));
  return 0;
}

// ---- fixture ----------------------------------------------------------

struct FixtureArgs {
  std::string name;
  FixtureParams params;
  std::string gaps;
  std::string out_path;
  std::string expected_path;
};

int run_fixture(FixtureArgs& a) {
  if (!a.gaps.empty()) a.params.gaps = parse_int_list(a.gaps);
  const Fixture f = make_fixture(a.name, a.params);
  emit_json(a.out_path, io::family_to_json(f.spec));
  const io::json expected = io::fixture_expected_to_json(f);
  if (!a.expected_path.empty()) {
    io::write_json(a.expected_path, expected);
  } else if (!a.out_path.empty()) {
    std::cout << expected.dump(2) << "\n";
  }
  return 0;
}

// ---- stats ------------------------------------------------------------

struct StatsArgs {
  i64 a = 0;
  i64 b = 1;
  u64 p = 0;
  std::string eps;
  std::string q0_side;
  i64 q0_target = 0;
  u64 prime_cap = 100000;
  std::string out_path;
};

int run_stats(const StatsArgs& a) {
  if (a.p == 0 && a.q0_side.empty()) {
    throw std::invalid_argument("stats needs --p (per-prime table) and/or --q0-side (prime search)");
  }
  std::ostringstream os;
  os << "stat,value\n";
  if (a.p != 0) {
    const ResidueClassifier c(a.p);
    if (!a.eps.empty()) {
      const std::vector<int> eps = parse_sign_vector(a.eps);
      os << "n0," << stat_n0(c, a.a, a.b, eps) << "\n";
    }
    os << "s0_plus," << stat_s0(c, a.a, a.b, SupportSide::residue) << "\n";
    os << "s0_minus," << stat_s0(c, a.a, a.b, SupportSide::nonresidue) << "\n";
    os << "s1_plus," << stat_s1(c, a.a, a.b, SupportSide::residue) << "\n";
    os << "s1_minus," << stat_s1(c, a.a, a.b, SupportSide::nonresidue) << "\n";
  }
  if (!a.q0_side.empty()) {
    if (a.q0_target < 1) throw std::invalid_argument("--q0-target must be >= 1");
    const SupportSide side = a.q0_side == "plus" ? SupportSide::residue
                           : a.q0_side == "minus" ? SupportSide::nonresidue
                                                  : throw std::invalid_argument("--q0-side must be plus or minus");
    const auto q = q0_search(a.a, a.b, side, a.q0_target, std::min(a.prime_cap, global_prime_cap()));
    os << "q0_" << a.q0_side << "_" << a.q0_target << ",";
    if (q) {
      os << *q << "\n";
    } else {
      os << "not_found\n";
    }
  }
  emit(a.out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact residue-pattern counting and asymptotic verification for arithmetic-progression families"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* cmd_analyze = app.add_subcommand("analyze", "Interaction structure of a family spec");
  cmd_analyze->add_option("--spec", analyze_args.spec_path, "Family spec JSON")->required();
  cmd_analyze->add_option("--out", analyze_args.out_path, "Report JSON path (default stdout)");

  CountArgs count_args;
  auto* cmd_count = app.add_subcommand("count", "Exact counts over a prime range (CSV)");
  cmd_count->add_option("--spec", count_args.spec_path, "Family spec JSON")->required();
  cmd_count->add_option("--mode", count_args.mode, "constant|pattern|support|eta (default by kind)");
  cmd_count->add_option("--eps", count_args.eps, "Sign (+1/-1) or sign vector (+-+)");
  cmd_count->add_option("--eta", count_args.eta, "Row sign vector for eta mode");
  cmd_count->add_option("--side", count_args.side, "residue|nonresidue for support mode");
  cmd_count->add_option("--out", count_args.out_path, "CSV path, columns p,mode,eps_or_eta,count (default stdout)");
  count_args.range.attach(cmd_count, /*default_all=*/true);

  VerifyArgs verify_args;
  auto* cmd_verify = app.add_subcommand("verify", "Compare exact counts against the predicted asymptotics");
  cmd_verify->add_option("--spec", verify_args.spec_path, "Family spec JSON");
  cmd_verify->add_option("--union-b", verify_args.union_b, "Comma list of differences: verify the union-table family");
  cmd_verify->add_option("--s", verify_args.s, "Row length for --union-b");
  cmd_verify->add_option("--mode", verify_args.mode, "constant|pattern|support (default by kind)");
  cmd_verify->add_option("--eps", verify_args.eps, "Sign or sign vector");
  cmd_verify->add_option("--side", verify_args.side, "residue|nonresidue");
  cmd_verify->add_option("--out", verify_args.out_path, "Per-prime CSV path, columns p,count,predicted,error,bound,pass,pi_class");
  cmd_verify->add_option("--summary", verify_args.summary_path, "Summary JSON path");
  cmd_verify->add_flag("--assert", verify_args.assert_bounds, "Exit 1 on any bound violation");
  verify_args.range.attach(cmd_verify, /*default_all=*/false);

  WeilArgs weil_args;
  auto* cmd_weil = app.add_subcommand("weil", "Character sums over products of distinct linear factors");
  cmd_weil->add_option("--p", weil_args.p, "Single evaluation at this prime");
  cmd_weil->add_option("--shifts", weil_args.shifts, "Comma list of shifts for --p");
  cmd_weil->add_option("--range-end", weil_args.range_end, "Truncate the sum at this x (default complete)");
  cmd_weil->add_option("--sets", weil_args.sets, "Random shift sets per prime (sweep mode)");
  cmd_weil->add_option("--max-degree", weil_args.max_degree, "Max degree in sweep mode")->capture_default_str();
  cmd_weil->add_option("--seed", weil_args.seed, "Sweep RNG seed")->capture_default_str();
  cmd_weil->add_option("--out", weil_args.out_path, "CSV path, columns p,d,N,value,bound,within_bound (default stdout)");
  cmd_weil->add_flag("--assert", weil_args.assert_bounds, "Exit 1 if any sum exceeds its bound");
  weil_args.range.attach(cmd_weil, /*default_all=*/true);

  GenerateArgs generate_args;
  auto* cmd_generate = app.add_subcommand("generate", "Admissible tuple from the inductive construction");
  cmd_generate->add_option("--d", generate_args.d, "Comma list of quotient gaps")->required();
  cmd_generate->add_option("--a1", generate_args.a1, "First offset")->capture_default_str();
  cmd_generate->add_option("--b1", generate_args.b1, "First difference")->capture_default_str();
  cmd_generate->add_option("--t", generate_args.t, "Comma list of multipliers (>= 2)")->required();
  cmd_generate->add_option("--s", generate_args.s, "Row length of the produced spec")->capture_default_str();
  cmd_generate->add_option("--out", generate_args.out_path, "Family spec JSON path (default stdout)");

  FixtureArgs fixture_args;
  auto* cmd_fixture = app.add_subcommand("fixture", "Canned worked-example constructions");
  cmd_fixture->add_option("--name", fixture_args.name, "k2|k3_i|k3_ii|k3_iii|minimal|maximal|squares_variant|primes_variant")->required();
  cmd_fixture->add_option("--s", fixture_args.params.s, "Row length");
  cmd_fixture->add_option("--q", fixture_args.params.q, "First overlap quotient");
  cmd_fixture->add_option("--r", fixture_args.params.r, "Second overlap quotient");
  cmd_fixture->add_option("--k", fixture_args.params.k, "Row count (minimal/maximal)");
  cmd_fixture->add_option("--gaps", fixture_args.gaps, "Gap tuple for the multiplier variants");
  cmd_fixture->add_option("--out", fixture_args.out_path, "Family spec JSON path (default stdout)");
  cmd_fixture->add_option("--expected", fixture_args.expected_path, "Expected-values JSON path (default stdout)");

  StatsArgs stats_args;
  auto* cmd_stats = app.add_subcommand("stats", "Run-length and first-occurrence statistics of one progression");
  cmd_stats->add_option("--a", stats_args.a, "Progression offset")->capture_default_str();
  cmd_stats->add_option("--b", stats_args.b, "Progression difference")->capture_default_str();
  cmd_stats->add_option("--p", stats_args.p, "Prime to evaluate the per-prime statistics at");
  cmd_stats->add_option("--eps", stats_args.eps, "Sign vector: also report the first matching shift");
  cmd_stats->add_option("--q0-side", stats_args.q0_side, "plus|minus: search the least prime with a given run length");
  cmd_stats->add_option("--q0-target", stats_args.q0_target, "Target run length for --q0-side");
  cmd_stats->add_option("--prime-cap", stats_args.prime_cap, "Search cap for --q0-side")->capture_default_str();
  cmd_stats->add_option("--out", stats_args.out_path, "CSV path, columns stat,value (default stdout)");

  try {
    app.parse(argc, argv);
    if (*cmd_analyze) return run_analyze(analyze_args);
    if (*cmd_count) return run_count(count_args);
    if (*cmd_verify) return run_verify(verify_args);
    if (*cmd_weil) return run_weil(weil_args);
    if (*cmd_generate) return run_generate(generate_args);
    if (*cmd_fixture) return run_fixture(fixture_args);
    if (*cmd_stats) return run_stats(stats_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

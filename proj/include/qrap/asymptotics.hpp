#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qrap/counting.hpp"
#include "qrap/signatures.hpp"
#include "qrap/structure.hpp"

namespace qrap {

// What is being counted and predicted. Sign vectors for pattern targets are
// indexed against the shift set in increasing order.
struct ShiftPatternTarget {
  std::vector<i64> Z;
  std::vector<int> eps;
};
struct ShiftSupportTarget {
  std::vector<i64> Z;
  SupportSide side;
};
// Union-of-progressions families { n + i*b_j }: the shift set is the union
// of the multiple tables of b, so the coefficient exponent is gamma.
struct MultiPatternTarget {
  std::vector<i64> b;
  i64 s;
  std::vector<int> eps;  // one sign per union element
};
struct MultiSupportTarget {
  std::vector<i64> b;
  i64 s;
  SupportSide side;
};
struct ConstantSignTarget {
  NormalizedFamily family;
  int eps;
};
struct Ap1PatternTarget {
  i64 a, b, s;
  std::vector<int> eps;
};
struct Ap1SupportTarget {
  i64 a, b, s;
  SupportSide side;
};

using Target = std::variant<ShiftPatternTarget, ShiftSupportTarget, MultiPatternTarget,
                            MultiSupportTarget, ConstantSignTarget, Ap1PatternTarget,
                            Ap1SupportTarget>;

std::string target_description(const Target& t);

enum class BoundForm { sqrt_p, sqrt_p_log_p };
enum class ValidOn { all_primes, pi_plus_only };
enum class PiClass { all, plus, minus, skipped };

const char* pi_class_name(PiClass c);

// Leading coefficient and error-bound form for a target: count ~ coef * p,
// with |count - coef*p| <= bound_constant * sqrt(p) [* log p].
struct Prediction {
  Rational coefficient;
  ValidOn valid_on = ValidOn::all_primes;
  bool zero_on_pi_minus = false;
  BoundForm bound_form = BoundForm::sqrt_p;
  i64 bound_constant = 0;
  std::optional<StructureReport> structure;  // filled for constant-sign targets

  double bound_at(u64 p) const;
};

Prediction predict(const Target& t);

// Exact count for the target at one prime; the ground truth the harness
// compares against.
i64 exact_count(const ResidueClassifier& c, const Target& t);

struct SampleSpec {
  bool all = false;       // every prime in range
  int per_decade = 200;   // otherwise ~this many log-uniform picks per decade
};

std::vector<u64> sample_primes(u64 lo, u64 hi, const SampleSpec& sample, u64 cap = kDefaultPrimeCap);

struct VerifyRow {
  u64 p = 0;
  i64 count = 0;
  double predicted = 0.0;
  double error = 0.0;
  double bound = 0.0;
  bool pass = true;
  PiClass pi_class = PiClass::all;
};

inline constexpr u64 kAssertFloor = 1000;  // error bounds asserted only from here up

struct VerifySummary {
  i64 n_primes = 0;
  i64 n_plus = 0;
  i64 n_minus = 0;
  i64 n_skipped = 0;
  double max_ratio = 0.0;          // max |count/(coef*p) - 1| where the coefficient applies
  i64 violations = 0;              // bound failures at p >= kAssertFloor
  bool pi_minus_all_zero = true;   // exact-zero confirmation on sampled minus primes
};

struct VerifyReport {
  Prediction prediction;
  std::vector<VerifyRow> rows;  // ascending p regardless of worker count
  VerifySummary summary;
};

VerifyReport verify_range(const Target& t, u64 lo, u64 hi, const SampleSpec& sample = {},
                          int workers = 1, u64 cap = kDefaultPrimeCap);

// Oscillation coverage: scans the allowable primes of [lo, hi] in order and
// reports the first run of `window` consecutive primes stuck in one
// signature class (nullopt when both classes appear in every window).
std::optional<u64> find_uncovered_window(const StructureReport& st, u64 lo, u64 hi, int window,
                                         u64 cap = kDefaultPrimeCap);

}  // namespace qrap

#include "qrap/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qrap/parallel.hpp"

namespace qrap {

namespace {

constexpr double kBoundSlack = 1.0 + 1e-12;  // absorbs float rounding at the boundary

i64 pow2_checked(i64 exp) {
  if (exp < 0 || exp > 62) throw std::overflow_error("coefficient exponent out of 64-bit range");
  return i64{1} << exp;
}

Rational unit_over(i64 b, i64 exp) {
  const i64 p2 = pow2_checked(exp);
  if (b > std::numeric_limits<i64>::max() / p2) {
    throw std::overflow_error("coefficient denominator out of 64-bit range");
  }
  return Rational(1, b * p2);
}

std::vector<i64> union_table(std::span<const i64> b, i64 s) {
  std::set<i64> u;
  for (i64 bj : b) {
    for (i64 i = 0; i < s; ++i) u.insert(i * bj);
  }
  return {u.begin(), u.end()};
}

std::string sign_string(std::span<const int> eps) {
  std::string s;
  for (int e : eps) s += e == 1 ? '+' : '-';
  return s;
}

}  // namespace

const char* pi_class_name(PiClass c) {
  switch (c) {
    case PiClass::all: return "all";
    case PiClass::plus: return "plus";
    case PiClass::minus: return "minus";
    case PiClass::skipped: return "skipped";
  }
  return "?";
}

std::string target_description(const Target& t) {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ShiftPatternTarget>) {
          os << "shift_pattern Z={";
          for (std::size_t i = 0; i < v.Z.size(); ++i) os << (i ? "," : "") << v.Z[i];
          os << "} eps=" << sign_string(v.eps);
        } else if constexpr (std::is_same_v<T, ShiftSupportTarget>) {
          os << "shift_support Z={";
          for (std::size_t i = 0; i < v.Z.size(); ++i) os << (i ? "," : "") << v.Z[i];
          os << "} side=" << support_side_name(v.side);
        } else if constexpr (std::is_same_v<T, MultiPatternTarget>) {
          os << "multi_pattern b=(";
          for (std::size_t i = 0; i < v.b.size(); ++i) os << (i ? "," : "") << v.b[i];
          os << ") s=" << v.s << " eps=" << sign_string(v.eps);
        } else if constexpr (std::is_same_v<T, MultiSupportTarget>) {
          os << "multi_support b=(";
          for (std::size_t i = 0; i < v.b.size(); ++i) os << (i ? "," : "") << v.b[i];
          os << ") s=" << v.s << " side=" << support_side_name(v.side);
        } else if constexpr (std::is_same_v<T, ConstantSignTarget>) {
          os << "constant_sign B=(";
          for (std::size_t i = 0; i < v.family.B.size(); ++i) os << (i ? "," : "") << v.family.B[i];
          os << ") alpha=" << v.family.alpha() << " eps=" << (v.eps == 1 ? "+1" : "-1");
        } else if constexpr (std::is_same_v<T, Ap1PatternTarget>) {
          os << "ap1_pattern a=" << v.a << " b=" << v.b << " s=" << v.s << " eps=" << sign_string(v.eps);
        } else if constexpr (std::is_same_v<T, Ap1SupportTarget>) {
          os << "ap1_support a=" << v.a << " b=" << v.b << " s=" << v.s
             << " side=" << support_side_name(v.side);
        }
      },
      t);
  return os.str();
}

double Prediction::bound_at(u64 p) const {
  const double root = std::sqrt(static_cast<double>(p));
  double b = static_cast<double>(bound_constant) * root;
  if (bound_form == BoundForm::sqrt_p_log_p) b *= std::log(static_cast<double>(p));
  return b;
}

Prediction predict(const Target& t) {
  Prediction pred;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ShiftPatternTarget>) {
          if (v.eps.size() != v.Z.size()) throw std::invalid_argument("predict: one sign per shift element");
          const i64 r = static_cast<i64>(v.Z.size());
          pred.coefficient = unit_over(1, r);
          pred.bound_constant = 2 * r;
          pred.bound_form = BoundForm::sqrt_p;
        } else if constexpr (std::is_same_v<T, ShiftSupportTarget>) {
          if (v.Z.empty()) throw std::invalid_argument("predict: empty shift set");
          const i64 w = 1 + v.Z.back() - v.Z.front();
          pred.coefficient = unit_over(1, w);
          pred.bound_constant = 2 * w;
          pred.bound_form = BoundForm::sqrt_p;
        } else if constexpr (std::is_same_v<T, MultiPatternTarget>) {
          const i64 g = gamma_value(v.b, v.s, GammaMode::brute);
          if (static_cast<i64>(v.eps.size()) != g) {
            throw std::invalid_argument("predict: pattern length must equal the union cardinality");
          }
          pred.coefficient = unit_over(1, g);
          pred.bound_constant = 2 * g;
          pred.bound_form = BoundForm::sqrt_p;
        } else if constexpr (std::is_same_v<T, MultiSupportTarget>) {
          if (v.b.empty()) throw std::invalid_argument("predict: empty difference tuple");
          const i64 bmax = *std::max_element(v.b.begin(), v.b.end());
          const i64 w = 1 + bmax * (v.s - 1);
          pred.coefficient = unit_over(1, w);
          pred.bound_constant = 2 * w;
          pred.bound_form = BoundForm::sqrt_p;
        } else if constexpr (std::is_same_v<T, ConstantSignTarget>) {
          if (v.eps != 1 && v.eps != -1) throw std::invalid_argument("predict: eps must be +-1");
          StructureReport st = analyze(v.family);
          const i64 exp = st.branch == Branch::plain ? st.alpha : st.alpha - st.e;
          pred.coefficient = unit_over(st.bmax, exp);
          pred.bound_constant = 1 + 2 * st.alpha;
          pred.bound_form = BoundForm::sqrt_p_log_p;
          if (st.branch == Branch::oscillating) {
            pred.valid_on = ValidOn::pi_plus_only;
            pred.zero_on_pi_minus = true;
          }
          pred.structure = std::move(st);
        } else if constexpr (std::is_same_v<T, Ap1PatternTarget>) {
          if (static_cast<i64>(v.eps.size()) != v.s) {
            throw std::invalid_argument("predict: one sign per window slot");
          }
          pred.coefficient = unit_over(v.b, v.s);
          pred.bound_constant = 1 + 2 * v.s;
          pred.bound_form = BoundForm::sqrt_p_log_p;
        } else if constexpr (std::is_same_v<T, Ap1SupportTarget>) {
          const i64 w = 1 + v.b * (v.s - 1);
          pred.coefficient = unit_over(v.b, w);
          pred.bound_constant = 1 + 2 * w;
          pred.bound_form = BoundForm::sqrt_p_log_p;
        }
      },
      t);
  return pred;
}

i64 exact_count(const ResidueClassifier& c, const Target& t) {
  return std::visit(
      [&](const auto& v) -> i64 {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ShiftPatternTarget>) {
          return count_pattern(c, v.Z, v.eps);
        } else if constexpr (std::is_same_v<T, ShiftSupportTarget>) {
          return count_support(c, v.Z, v.side);
        } else if constexpr (std::is_same_v<T, MultiPatternTarget>) {
          return count_pattern(c, union_table(v.b, v.s), v.eps);
        } else if constexpr (std::is_same_v<T, MultiSupportTarget>) {
          return count_support(c, union_table(v.b, v.s), v.side);
        } else if constexpr (std::is_same_v<T, ConstantSignTarget>) {
          return count_constant_sign(c, v.family, v.eps);
        } else if constexpr (std::is_same_v<T, Ap1PatternTarget>) {
          return count_ap1_pattern(c, v.a, v.b, v.s, v.eps);
        } else {
          return count_ap1_support(c, v.a, v.b, v.s, v.side);
        }
      },
      t);
}

std::vector<u64> sample_primes(u64 lo, u64 hi, const SampleSpec& sample, u64 cap) {
  lo = std::max<u64>(lo, 3);
  std::vector<u64> all = primes_in_range(lo, hi, cap);
  if (sample.all) return all;
  if (sample.per_decade < 1) throw std::invalid_argument("sample_primes: per_decade must be >= 1");

  std::vector<u64> picked;
  const double ratio = std::pow(10.0, 1.0 / sample.per_decade);
  double g = static_cast<double>(lo);
  std::size_t idx = 0;
  while (g <= static_cast<double>(hi) && idx < all.size()) {
    const u64 at = static_cast<u64>(std::ceil(g));
    while (idx < all.size() && all[idx] < at) ++idx;
    if (idx == all.size()) break;
    if (picked.empty() || picked.back() != all[idx]) picked.push_back(all[idx]);
    g = std::max(g * ratio, g + 1.0);
  }
  return picked;
}

namespace {

// Which primes can be skipped: the harness asserts nothing at primes where
// the dominant-term machinery needs invertible differences (p dividing some
// b); shift targets never skip.
bool allowable_at(const Target& t, const Prediction& pred, u64 p) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantSignTarget>) {
          for (i64 b : pred.structure->B) {
            if (static_cast<u64>(b) % p == 0) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Ap1PatternTarget> ||
                             std::is_same_v<T, Ap1SupportTarget>) {
          return static_cast<u64>(v.b) % p != 0;
        } else {
          (void)v;
          return true;
        }
      },
      t);
}

}  // namespace

VerifyReport verify_range(const Target& t, u64 lo, u64 hi, const SampleSpec& sample, int workers,
                          u64 cap) {
  if (workers < 1) throw std::invalid_argument("verify_range: workers must be >= 1");
  VerifyReport report;
  report.prediction = predict(t);
  const Prediction& pred = report.prediction;

  const std::vector<u64> ps = sample_primes(lo, hi, sample, cap);
  report.rows = parallel_map_indexed<VerifyRow>(ps.size(), workers, [&](std::size_t i) {
    const u64 p = ps[i];
    const ResidueClassifier c(p);

    VerifyRow row;
    row.p = p;
    if (!allowable_at(t, pred, p)) {
      row.pi_class = PiClass::skipped;
    } else if (pred.valid_on == ValidOn::pi_plus_only) {
      const SignatureReport sig = signature_of(p, *pred.structure);
      row.pi_class = sig.cls == SignatureClass::positive ? PiClass::plus : PiClass::minus;
    }

    row.count = exact_count(c, t);
    const Rational& coef = pred.coefficient;
    row.predicted = static_cast<double>(coef.num) * static_cast<double>(p) / static_cast<double>(coef.den);
    const int128 diff = static_cast<int128>(row.count) * coef.den - static_cast<int128>(coef.num) * p;
    const int128 abs_diff = diff < 0 ? -diff : diff;
    row.error = static_cast<double>(abs_diff) / static_cast<double>(coef.den);
    row.bound = pred.bound_at(p);

    switch (row.pi_class) {
      case PiClass::skipped: row.pass = true; break;
      case PiClass::minus: row.pass = row.count == 0; break;
      default: row.pass = row.error <= row.bound * kBoundSlack; break;
    }
    return row;
  });

  VerifySummary& s = report.summary;
  s.n_primes = static_cast<i64>(report.rows.size());
  for (const VerifyRow& row : report.rows) {
    switch (row.pi_class) {
      case PiClass::plus: ++s.n_plus; break;
      case PiClass::minus: ++s.n_minus; break;
      case PiClass::skipped: ++s.n_skipped; break;
      case PiClass::all: break;
    }
    const bool applies = row.pi_class == PiClass::all || row.pi_class == PiClass::plus;
    if (applies) {
      const double expected = static_cast<double>(pred.coefficient.num) * static_cast<double>(row.p) /
                              static_cast<double>(pred.coefficient.den);
      s.max_ratio = std::max(s.max_ratio, std::abs(static_cast<double>(row.count) / expected - 1.0));
      if (row.p >= kAssertFloor && !row.pass) ++s.violations;
    }
    if (row.pi_class == PiClass::minus && row.count != 0) s.pi_minus_all_zero = false;
  }
  return report;
}

std::optional<u64> find_uncovered_window(const StructureReport& st, u64 lo, u64 hi, int window,
                                         u64 cap) {
  if (window < 2) throw std::invalid_argument("find_uncovered_window: window must be >= 2");
  const PrimeClassification cls = classify_primes(st, lo, hi, std::nullopt, cap);

  // merge the two ascending class lists and look for a single-class run
  std::size_t ip = 0, im = 0;
  int run = 0;
  bool run_is_plus = false;
  u64 run_start = 0;
  while (ip < cls.pi_plus.size() || im < cls.pi_minus.size()) {
    bool take_plus;
    if (ip == cls.pi_plus.size()) {
      take_plus = false;
    } else if (im == cls.pi_minus.size()) {
      take_plus = true;
    } else {
      take_plus = cls.pi_plus[ip] < cls.pi_minus[im];
    }
    const u64 p = take_plus ? cls.pi_plus[ip++] : cls.pi_minus[im++];
    if (run == 0 || take_plus != run_is_plus) {
      run = 1;
      run_is_plus = take_plus;
      run_start = p;
    } else if (++run >= window) {
      return run_start;
    }
  }
  return std::nullopt;
}

}  // namespace qrap

#include "qrap/counting.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace qrap {

const char* support_side_name(SupportSide s) {
  return s == SupportSide::residue ? "residue" : "nonresidue";
}

namespace {

void check_sign(int eps) {
  if (eps != 1 && eps != -1) throw std::invalid_argument("sign must be +1 or -1");
}

void check_shift_set(std::span<const i64> z) {
  if (z.empty()) throw std::invalid_argument("shift set must be nonempty");
  if (z.front() < 0) throw std::invalid_argument("shift set elements must be nonnegative");
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    if (z[i] >= z[i + 1]) throw std::invalid_argument("shift set must be strictly increasing");
  }
}

// Largest n with every row contained in [1, p-1]; 0 when there is none.
i64 max_shift(const NormalizedFamily& f, u64 p) {
  i64 r = std::numeric_limits<i64>::max();
  for (std::size_t i = 0; i < f.B.size(); ++i) {
    const i64 max_s = f.S[i].back();
    if (max_s > static_cast<i64>(p) - 1) return 0;
    r = std::min(r, (static_cast<i64>(p) - 1 - max_s) / f.B[i]);
  }
  return r;
}

}  // namespace

i64 count_constant_sign(const ResidueClassifier& c, const NormalizedFamily& f, int eps) {
  check_sign(eps);
  const i64 r = max_shift(f, c.prime());
  std::set<std::vector<i64>> distinct_sets;
  for (i64 n = 1; n <= r; ++n) {
    bool ok = true;
    for (std::size_t i = 0; i < f.B.size() && ok; ++i) {
      const i64 base = f.B[i] * n;
      for (i64 j : f.S[i]) {
        if (c.chi_unit(static_cast<u64>(base + j)) != eps) {
          ok = false;
          break;
        }
      }
    }
    if (ok) distinct_sets.insert(f.member(n));
  }
  return static_cast<i64>(distinct_sets.size());
}

i64 count_pattern(const ResidueClassifier& c, std::span<const i64> z, std::span<const int> eps) {
  check_shift_set(z);
  if (eps.size() != z.size()) throw std::invalid_argument("count_pattern: one sign per shift element");
  for (int e : eps) check_sign(e);

  const i64 n_max = static_cast<i64>(c.prime()) - 1 - z.back();
  i64 count = 0;
  for (i64 n = 1; n <= n_max; ++n) {
    bool ok = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (c.chi_unit(static_cast<u64>(n + z[i])) != eps[i]) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

std::vector<i64> count_pattern_spectrum(const ResidueClassifier& c, std::span<const i64> z) {
  check_shift_set(z);
  const int r = static_cast<int>(z.size());
  if (r > 20) throw InstanceTooLargeError("count_pattern_spectrum: |Z| capped at 20");

  std::vector<i64> counts(std::size_t{1} << r, 0);
  const i64 n_max = static_cast<i64>(c.prime()) - 1 - z.back();
  for (i64 n = 1; n <= n_max; ++n) {
    unsigned mask = 0;
    for (int i = 0; i < r; ++i) {
      if (c.chi_unit(static_cast<u64>(n + z[i])) == 1) mask |= 1u << i;
    }
    ++counts[mask];
  }
  return counts;
}

i64 count_support(const ResidueClassifier& c, std::span<const i64> z, SupportSide side) {
  check_shift_set(z);
  const i64 width = z.back() - z.front();
  std::vector<std::uint8_t> member(width + 1, 0);
  for (i64 v : z) member[v - z.front()] = 1;
  const int inside = side == SupportSide::residue ? 1 : -1;

  const i64 n_max = static_cast<i64>(c.prime()) - 1 - z.back();
  i64 count = 0;
  for (i64 n = 1; n <= n_max; ++n) {
    const i64 lo = n + z.front();
    bool ok = true;
    for (i64 off = 0; off <= width; ++off) {
      const int want = member[off] ? inside : -inside;
      if (c.chi_unit(static_cast<u64>(lo + off)) != want) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

i64 count_eta(const ResidueClassifier& c, const NormalizedFamily& f, std::span<const int> eta) {
  if (eta.size() != f.B.size()) throw std::invalid_argument("count_eta: one sign per row");
  for (int e : eta) check_sign(e);

  const i64 r = max_shift(f, c.prime());
  std::set<std::vector<i64>> distinct_sets;
  for (i64 n = 1; n <= r; ++n) {
    bool ok = true;
    for (std::size_t i = 0; i < f.B.size() && ok; ++i) {
      const i64 base = f.B[i] * n;
      for (i64 j : f.S[i]) {
        if (c.chi_unit(static_cast<u64>(base + j)) != eta[i]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) distinct_sets.insert(f.member(n));
  }
  return static_cast<i64>(distinct_sets.size());
}

namespace {

struct Ap1Range {
  i64 lo, hi;  // inclusive start indices; empty when lo > hi
};

// Starts n with { a + b*(n+i) : i in [0, s-1] } inside [1, p-1], n >= n_floor.
Ap1Range ap1_starts(u64 p, i64 a, i64 b, i64 s, i64 n_floor) {
  const i64 top = static_cast<i64>(p) - 1;
  if (a > top) return {1, 0};
  const i64 lo = std::max<i64>(n_floor, a >= 1 ? 0 : 1);
  const i64 hi = (top - a) / b - (s - 1);
  return {lo, hi};
}

void check_ap1(i64 a, i64 b, i64 s) {
  if (a < 0) throw std::invalid_argument("progression offset a must be nonnegative");
  if (b < 1) throw std::invalid_argument("progression difference b must be positive");
  if (s < 1) throw std::invalid_argument("window length s must be >= 1");
}

}  // namespace

i64 count_ap1_pattern(const ResidueClassifier& c, i64 a, i64 b, i64 s, std::span<const int> eps) {
  check_ap1(a, b, s);
  if (static_cast<i64>(eps.size()) != s) throw std::invalid_argument("count_ap1_pattern: one sign per window slot");
  for (int e : eps) check_sign(e);

  const auto [lo, hi] = ap1_starts(c.prime(), a, b, s, 0);
  i64 count = 0;
  for (i64 n = lo; n <= hi; ++n) {
    bool ok = true;
    for (i64 i = 0; i < s; ++i) {
      if (c.chi_unit(static_cast<u64>(a + b * (n + i))) != eps[i]) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

i64 count_ap1_support(const ResidueClassifier& c, i64 a, i64 b, i64 s, SupportSide side) {
  check_ap1(a, b, s);
  const int inside = side == SupportSide::residue ? 1 : -1;
  const auto [lo, hi] = ap1_starts(c.prime(), a, b, s, 0);
  i64 count = 0;
  for (i64 n = lo; n <= hi; ++n) {
    const i64 first = a + b * n;
    const i64 span = b * (s - 1);
    bool ok = true;
    for (i64 off = 0; off <= span; ++off) {
      const int want = off % b == 0 ? inside : -inside;
      if (c.chi_unit(static_cast<u64>(first + off)) != want) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

i64 stat_n0(const ResidueClassifier& c, i64 a, i64 b, std::span<const int> eps) {
  check_ap1(a, b, static_cast<i64>(eps.size()));
  for (int e : eps) check_sign(e);
  const i64 s = static_cast<i64>(eps.size());

  const auto [lo, hi] = ap1_starts(c.prime(), a, b, s, 1);
  for (i64 n = lo; n <= hi; ++n) {
    bool ok = true;
    for (i64 i = 0; i < s; ++i) {
      if (c.chi_unit(static_cast<u64>(a + b * (n + i))) != eps[i]) {
        ok = false;
        break;
      }
    }
    if (ok) return n;
  }
  return 0;
}

namespace {

// Term indices m >= 0 with a + b*m inside [1, p-1].
Ap1Range term_range(u64 p, i64 a, i64 b) {
  const i64 top = static_cast<i64>(p) - 1;
  if (a > top) return {1, 0};
  return {a >= 1 ? 0 : 1, (top - a) / b};
}

}  // namespace

i64 stat_s0(const ResidueClassifier& c, i64 a, i64 b, SupportSide side) {
  check_ap1(a, b, 1);
  const int want = side == SupportSide::residue ? 1 : -1;
  const auto [lo, hi] = term_range(c.prime(), a, b);
  i64 best = 0, run = 0;
  for (i64 m = lo; m <= hi; ++m) {
    if (c.chi_unit(static_cast<u64>(a + b * m)) == want) {
      best = std::max(best, ++run);
    } else {
      run = 0;
    }
  }
  return best;
}

i64 stat_s1(const ResidueClassifier& c, i64 a, i64 b, SupportSide side) {
  check_ap1(a, b, 1);
  const int inside = side == SupportSide::residue ? 1 : -1;
  const auto [lo, hi] = term_range(c.prime(), a, b);

  i64 best = 0;
  for (i64 m = lo; m <= hi; ++m) {
    if (c.chi_unit(static_cast<u64>(a + b * m)) != inside) continue;
    i64 len = 1;
    while (m + len <= hi) {
      // the b-1 integers between the previous and next term must lie outside
      const i64 prev = a + b * (m + len - 1);
      bool ok = true;
      for (i64 x = prev + 1; x < prev + b; ++x) {
        if (c.chi_unit(static_cast<u64>(x)) != -inside) {
          ok = false;
          break;
        }
      }
      if (!ok || c.chi_unit(static_cast<u64>(prev + b)) != inside) break;
      ++len;
    }
    best = std::max(best, len);
  }
  return best;
}

std::optional<u64> q0_search(i64 a, i64 b, SupportSide side, i64 s_target, u64 prime_cap) {
  check_ap1(a, b, 1);
  if (s_target < 1) throw std::invalid_argument("q0_search: target length must be >= 1");
  if (prime_cap < 3) return std::nullopt;
  for (u64 p : primes_in_range(3, prime_cap, prime_cap)) {
    if ((p & 1) == 0) continue;
    const ResidueClassifier c(p);
    if (stat_s0(c, a, b, side) == s_target) return p;
  }
  return std::nullopt;
}

}  // namespace qrap

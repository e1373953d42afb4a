#include "qrap/fixtures.hpp"

#include <limits>
#include <stdexcept>

namespace qrap {

namespace {

void need(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

i64 checked_mul(i64 a, i64 b) {
  if (a > std::numeric_limits<i64>::max() / b) throw std::overflow_error("fixture multiplier overflow");
  return a * b;
}

Fixture build(const std::string& name, std::vector<i64> d, i64 b1, std::vector<i64> t, i64 s,
              i64 e, Branch branch) {
  Fixture f;
  f.name = name;
  f.spec = generate_admissible(d, /*a1=*/1, b1, t, s);

  i64 bmax = b1;
  for (i64 ti : t) bmax = checked_mul(bmax, ti);

  const i64 k = static_cast<i64>(d.size()) + 1;
  f.expected.alpha = k * s;
  f.expected.e = e;
  f.expected.exponent = f.expected.alpha - e;
  f.expected.branch = branch;
  if (f.expected.exponent > 62) throw std::overflow_error("fixture coefficient exponent too large");
  f.expected.coefficient = Rational(1, checked_mul(bmax, i64{1} << f.expected.exponent));
  return f;
}

std::vector<i64> consecutive_primes(std::size_t n, i64 from) {
  std::vector<i64> out;
  for (i64 v = from; out.size() < n; ++v) {
    if (is_prime(static_cast<u64>(v))) out.push_back(v);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"k2",      "k3_i",    "k3_ii",           "k3_iii",
                                                 "minimal", "maximal", "squares_variant", "primes_variant"};
  return names;
}

Fixture make_fixture(const std::string& name, const FixtureParams& params) {
  const i64 s = params.s;
  const i64 q = params.q;
  const i64 r = params.r;

  if (name == "k2") {
    need(s >= 2 && q >= 1 && q <= s - 1, "k2 fixture: need 1 <= q <= s-1");
    return build(name, {q}, 1, {2}, s, s - q, Branch::oscillating);
  }
  if (name == "k3_i") {
    need(s >= 2 && q >= 1 && q <= s - 1, "k3_i fixture: need 1 <= q <= s-1");
    // second gap of s keeps row 3 clear of the block
    return build(name, {q, s}, 1, {2, 2}, s, s - q, Branch::oscillating);
  }
  if (name == "k3_ii" || name == "k3_iii") {
    need(s >= 2 && q >= 1 && q <= s - 1 && r >= 1 && r <= s - 1,
         "k3 fixture: need 1 <= q, r <= s-1");
    if (name == "k3_ii") {
      need(q + r >= s, "k3_ii fixture: needs q + r >= s (otherwise rows 1 and 3 also overlap)");
    } else {
      need(q + r < s, "k3_iii fixture: needs q + r < s (all three pairs overlap)");
    }
    return build(name, {q, r}, 1, {2, 2}, s, 2 * s - q - r, Branch::oscillating);
  }
  if (name == "minimal") {
    need(params.k >= 2 && s >= 2, "minimal fixture: need k >= 2 and s >= 2");
    const std::vector<i64> d(params.k - 1, s - 1);
    const std::vector<i64> t(params.k - 1, 2);
    return build(name, d, 1, t, s, params.k - 1, Branch::oscillating);
  }
  if (name == "maximal") {
    need(params.k >= 2, "maximal fixture: need k >= 2");
    need(params.s == 0 || params.s == params.k, "maximal fixture: s is fixed at k");
    const i64 k = params.k;
    const std::vector<i64> d(k - 1, 1);
    const std::vector<i64> t(k - 1, 2);
    return build(name, d, 1, t, /*s=*/k, (k - 1) * (k - 1), Branch::oscillating);
  }
  if (name == "squares_variant" || name == "primes_variant") {
    need(!params.gaps.empty(), "variant fixture: gap tuple required");
    need(s >= 2, "variant fixture: need s >= 2");
    i64 e = 0;
    for (i64 g : params.gaps) {
      need(g >= 1 && g <= s - 1, "variant fixture: gaps must lie in [1, s-1]");
      e += s - g;
    }
    if (name == "squares_variant") {
      const std::vector<i64> t(params.gaps.size(), 4);
      return build(name, params.gaps, 1, t, s, e, Branch::amplified);
    }
    return build(name, params.gaps, 2, consecutive_primes(params.gaps.size(), 3), s, e,
                 Branch::oscillating);
  }
  throw std::domain_error("unknown fixture name: " + name);
}

}  // namespace qrap

#pragma once

#include <string>
#include <vector>

#include "qrap/structure.hpp"

namespace qrap {

// Frozen expectations for a canned construction. exponent = alpha - e is the
// power of 1/2 in the leading coefficient 1 / (bmax * 2^exponent).
struct FixtureExpected {
  i64 alpha = 0;
  i64 e = 0;
  i64 exponent = 0;
  Branch branch = Branch::oscillating;
  Rational coefficient;
};

struct Fixture {
  std::string name;
  FamilySpec spec;
  FixtureExpected expected;
};

// Parameters a fixture shape consumes; unused fields stay zero/empty.
struct FixtureParams {
  int k = 0;
  i64 s = 0;
  i64 q = 0;
  i64 r = 0;
  std::vector<i64> gaps;  // multiplier variants take a free gap tuple
};

// Shapes:
//   k2(s, q)            two rows, one overlap of quotient q;      e = s-q
//   k3_i(s, q)          three rows, one overlap;                  e = s-q
//   k3_ii(s, q, r)      overlaps 1-2 and 2-3 only (q+r >= s);     e = 2s-q-r
//   k3_iii(s, q, r)     all three pairs overlap (q+r < s);        e = 2s-q-r
//   minimal(k, s)       single block, every gap s-1;              e = k-1
//   maximal(k)          single block, every gap 1, s = k;         e = (k-1)^2
//   squares_variant(s, gaps)  square multipliers: branch amplified
//   primes_variant(s, gaps)   prime multipliers: branch oscillating
// Inconsistent parameters (e.g. q >= s) raise std::domain_error.
Fixture make_fixture(const std::string& name, const FixtureParams& params);

const std::vector<std::string>& fixture_names();

}  // namespace qrap

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qrap/arith.hpp"

namespace qrap {

// One evaluated character sum over a product of distinct linear factors
// f(x) = prod_i (x + shift_i), complete (range_end empty) or truncated at
// range_end. The reference bound is 2d*sqrt(p) for complete sums and
// 2d*sqrt(p)*log(p) (natural log) for truncated ones.
struct CharSumResult {
  u64 p = 0;
  std::vector<u64> shifts;  // reduced mod p, pairwise distinct
  std::optional<u64> range_end;
  int degree = 0;
  i64 value = 0;
  double bound = 0.0;
  bool within_bound = false;
};

// Throws std::domain_error when two shifts coincide mod p (repeated roots),
// std::invalid_argument when range_end > p-1.
CharSumResult char_sum(const ResidueClassifier& c, std::span<const i64> shifts,
                       std::optional<u64> range_end);

}  // namespace qrap

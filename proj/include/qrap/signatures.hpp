#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qrap/structure.hpp"

namespace qrap {

enum class SignatureClass { positive, non_positive, not_allowable };

const char* signature_class_name(SignatureClass c);

// Character values of the B-products over the Lambda index sets, in the
// order of StructureReport::lambda. A prime dividing some element of B is
// not allowable and carries no values.
struct SignatureReport {
  u64 p = 0;
  bool allowable = false;
  std::vector<int> values;  // +-1 per lambda entry
  SignatureClass cls = SignatureClass::not_allowable;
};

// Plain signature; throws std::domain_error when lambda is empty.
SignatureReport signature_of(u64 p, const StructureReport& r);

// Sign-twisted variant: the value for I is the product over i in I of
// eta(i) * chi_p(b_i). eta has one entry per row of B.
SignatureReport signature_of(u64 p, const StructureReport& r, std::span<const int> eta);

struct PrimeClassification {
  std::vector<u64> pi_plus;
  std::vector<u64> pi_minus;
  std::vector<u64> skipped;  // non-allowable primes in range
};

// Partitions the odd primes in [lo, hi] by signature class. Evaluation is
// per-prime independent; output is always in ascending order.
PrimeClassification classify_primes(const StructureReport& r, u64 lo, u64 hi,
                                    std::optional<std::vector<int>> eta = std::nullopt,
                                    u64 cap = kDefaultPrimeCap);

}  // namespace qrap

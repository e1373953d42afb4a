#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrap/arith.hpp"
#include "qrap/progressions.hpp"

namespace qrap {

// One exact count at one prime, ready for CSV streaming.
struct CountRecord {
  u64 p = 0;
  std::string mode;   // "constant" | "pattern" | "support" | "eta"
  std::string signs;  // "+1"/"-1", a sign string like "+-+", or "residue"/"nonresidue"
  i64 count = 0;
};

enum class SupportSide { residue, nonresidue };

const char* support_side_name(SupportSide s);

// Distinct member sets of the normalized family inside [1, p-1] whose
// elements all have character eps. Equal sets reached from different shifts
// count once.
i64 count_constant_sign(const ResidueClassifier& c, const NormalizedFamily& f, int eps);

// Shifts n >= 1 with n + Z inside [1, p-1] realizing the sign vector eps
// (indexed against Z in increasing order).
i64 count_pattern(const ResidueClassifier& c, std::span<const i64> z, std::span<const int> eps);

// Counts for every sign vector at once; entry m counts shifts whose pattern
// has bit i of m set exactly when chi(n + z_i) == +1. |Z| capped at 20.
std::vector<i64> count_pattern_spectrum(const ResidueClassifier& c, std::span<const i64> z);

// Shifts n >= 1 whose translate n + Z is exactly the residue (resp.
// non-residue) set of its spanning interval.
i64 count_support(const ResidueClassifier& c, std::span<const i64> z, SupportSide side);

// Distinct member sets where every element of row i has character eta(i).
i64 count_eta(const ResidueClassifier& c, const NormalizedFamily& f, std::span<const int> eta);

// Single-progression variants counting starts n >= 0 of
// { a + b*(n+i) : i in [0, s-1] } inside [1, p-1].
i64 count_ap1_pattern(const ResidueClassifier& c, i64 a, i64 b, i64 s, std::span<const int> eps);
i64 count_ap1_support(const ResidueClassifier& c, i64 a, i64 b, i64 s, SupportSide side);

// First shift n >= 1 whose window of s consecutive progression terms
// realizes eps inside [1, p-1]; 0 when no witness exists.
i64 stat_n0(const ResidueClassifier& c, i64 a, i64 b, std::span<const int> eps);

// Longest run of consecutive progression terms inside [1, p-1] that are all
// residues (resp. non-residues); 0 when none.
i64 stat_s0(const ResidueClassifier& c, i64 a, i64 b, SupportSide side);

// Longest window of consecutive progression terms that forms a residue
// (resp. non-residue) support set; 0 when none.
i64 stat_s1(const ResidueClassifier& c, i64 a, i64 b, SupportSide side);

// Least odd prime q <= prime_cap with stat_s0(q) == s_target.
std::optional<u64> q0_search(i64 a, i64 b, SupportSide side, i64 s_target, u64 prime_cap);

}  // namespace qrap

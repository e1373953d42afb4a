#pragma once

#include <span>
#include <vector>

#include "qrap/arith.hpp"
#include "qrap/rational.hpp"

namespace qrap {

enum class FamilyKind { shift, ap, normalized };

// User-facing description of a family of finite integer sets:
//   shift:      all translates n + Z, n >= 1, of a fixed finite set Z
//   ap:         unions of m progressions  { a_j + b_j*(n+i) : i in [0, s-1] }, n >= 0
//   normalized: unions of rows  b_i*n + S_i, n >= 1 (the canonical form of ap)
struct FamilySpec {
  FamilyKind kind = FamilyKind::shift;
  std::vector<i64> Z;                  // shift: sorted distinct nonnegative
  std::vector<i64> a, b;               // ap: m-tuples, b_j >= 1, pairs (a_j,b_j) distinct
  i64 s = 1;                           // ap: row length
  std::vector<i64> B;                  // normalized: distinct positive
  std::vector<std::vector<i64>> S;     // normalized: nonempty sorted sets

  static FamilySpec shift_family(std::vector<i64> z);
  static FamilySpec ap_family(std::vector<i64> a, std::vector<i64> b, i64 s);
  static FamilySpec normalized_family(std::vector<i64> B, std::vector<std::vector<i64>> S);
};

// Canonical (B, S) form: member(n) = union of b_i*n + S_i for n >= 1.
// B is ascending and each S_i is sorted.
struct NormalizedFamily {
  std::vector<i64> B;
  std::vector<std::vector<i64>> S;

  int k() const { return static_cast<int>(B.size()); }
  i64 bmax() const;
  i64 alpha() const;  // sum of |S_i|
  std::vector<i64> member(i64 n) const;  // sorted, deduplicated
};

// Groups the ap rows by common difference and expands each group's offsets.
NormalizedFamily normalize(const FamilySpec& ap_spec);

// Any kind -> normalized view. A shift family Z becomes B = {1}, S = (Z).
// For ap this drops the n = 0 member (normalized families start at n = 1).
NormalizedFamily as_normalized(const FamilySpec& spec);

// Raw ap member set for n >= 0 (the definition the ap kind counts from).
std::vector<i64> ap_member(const FamilySpec& ap_spec, i64 n);

enum class GammaMode { brute, closed_form };

// Cardinality of the union of {i*b_j : i in [0, s-1]} over j.
// brute: direct set union, any distinct positive b.
// closed_form: the inclusion-exclusion formula; requires k >= 2, b strictly
// increasing and pairwise coprime (std::domain_error otherwise).
i64 gamma_value(std::span<const i64> b, i64 s, GammaMode mode);

struct DefectResult {
  i64 defect;
  i64 cardinality;
};

// Defect and cardinality of union_j { a_j + b*i : i in [0, s-1] } computed
// from the gap structure of the rationals a_j / b (no direct union).
DefectResult defect_and_cardinality(std::span<const i64> a, i64 b, i64 s);

i64 alpha_of(const NormalizedFamily& f);

// alpha via both routes (row cardinalities and m*s minus group defects);
// throws std::logic_error if they ever disagree.
i64 alpha_checked(const FamilySpec& ap_spec);

// Rows of s points placed at offsets accumulated from the gap sequence.
// A block is a maximal run of consecutive gaps <= s-1 (rows that overlap).
struct OverlapDiagram {
  i64 s = 1;
  std::vector<i64> gaps;
  i64 rows = 1;

  struct Block {
    int first_row = 0;  // support interval of rows, 1-based, inclusive
    int last_row = 0;
    std::vector<i64> gap_run;
    i64 columns = 0;  // s + sum of the run's gaps
  };
  std::vector<Block> blocks;
  i64 total_columns = 0;  // s*rows - sum over in-block gaps of (s - gap)
};

OverlapDiagram overlap_diagram(std::span<const i64> gaps, i64 s);

}  // namespace qrap

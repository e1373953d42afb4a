#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qrap/progressions.hpp"
#include "qrap/rational.hpp"

namespace qrap {

// Asymptotic regime of the constant-sign count:
//   plain:       no arithmetic interaction between rows (Lambda empty),
//                coefficient 1 / (b * 2^alpha) on all primes
//   amplified:   every Lambda-product of b's is a square,
//                coefficient 1 / (b * 2^(alpha-e)) on all primes
//   oscillating: some Lambda-product is not a square; count is 0 on the
//                non-positive-signature primes and 1 / (b * 2^(alpha-e))
//                on the positive ones
enum class Branch { plain, amplified, oscillating };

const char* branch_name(Branch b);

// Interaction structure of a normalized family: the index sets K whose rows
// meet rationally, the exclusive rational values T(K) witnessing each, the
// even-subset collection Lambda they generate, and the derived exponents.
struct StructureReport {
  std::vector<i64> B;  // ascending row differences
  // (K, T(K)) pairs with K a sorted 1-based index set and T(K) nonempty,
  // ordered lexicographically by K. T(K) sets are pairwise disjoint.
  std::vector<std::pair<std::vector<int>, std::vector<Rational>>> kmax;
  std::vector<std::vector<int>> lambda;  // deduplicated, sorted lexicographically
  i64 alpha = 0;
  i64 bmax = 1;
  i64 e = 0;  // sum over kmax of |T(K)| * (|K| - 1)
  Branch branch = Branch::plain;
};

// Full subset-enumeration analysis (k capped at 16).
StructureReport analyze(const NormalizedFamily& f);

// All nonempty subsets T of the labeled offset pool {(i, j) : j in S_i} in
// which every distinct rational value j / b_i appears an even number of
// times. Brute force over 2^alpha subsets; alpha capped at 20. The result
// size always equals 2^e - 1.
std::vector<std::vector<std::pair<int, i64>>> enumerate_even_overlap_sets(const NormalizedFamily& f);

// Overlap diagrams built from the integer quotient gaps between the row
// base points a_i / b_i of an admissible ap tuple. Row labels refer to
// 1-based positions in the originating spec.
struct QuotientDiagram {
  struct LabeledDiagram {
    OverlapDiagram diagram;       // single block by construction
    std::vector<int> row_labels;  // original ap indices, ascending base point
  };
  std::vector<LabeledDiagram> diagrams;
  // (i, j, q) with i, j original indices, j the row q_j = q_i + q placed q
  // columns to the right of row i; one entry per diagram gap.
  std::vector<std::array<i64, 3>> quotients;
};

struct QuotientAnalysis {
  QuotientDiagram diagram;
  i64 e = 0;
  // Even-cardinality column label sets, relabeled into the ascending-B index
  // space of normalize(spec) so they compare directly with analyze().lambda.
  std::vector<std::vector<int>> lambda;
};

// Requires an admissible spec: distinct b_i and a_i*b_j != a_j*b_i for
// i != j (std::domain_error otherwise).
QuotientAnalysis quotient_diagram_e(const FamilySpec& ap_spec);

// Inductive admissible-tuple generator: a_{i+1} = t_i*(a_i + d_i*b_i),
// b_{i+1} = t_i*b_i, which forces a_i*b_j - a_j*b_i = (sum of d between)
// * b_i*b_j. The identity is re-verified exactly on the output.
FamilySpec generate_admissible(std::span<const i64> d, i64 a1, i64 b1, std::span<const i64> t, i64 s);

}  // namespace qrap

#include "qrap/structure.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qrap {

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::plain: return "plain";
    case Branch::amplified: return "amplified";
    case Branch::oscillating: return "oscillating";
  }
  return "?";
}

namespace {

// Even-cardinality nonempty subsets of a sorted index set.
void add_even_subsets(const std::vector<int>& k, std::set<std::vector<int>>& out) {
  const int n = static_cast<int>(k.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    std::vector<int> subset;
    for (int b = 0; b < n; ++b) {
      if (mask & (1u << b)) subset.push_back(k[b]);
    }
    out.insert(std::move(subset));
  }
}

}  // namespace

StructureReport analyze(const NormalizedFamily& f) {
  const int k = f.k();
  if (k > 16) throw InstanceTooLargeError("analyze: k capped at 16");
  if (k < 1) throw std::invalid_argument("analyze: empty family");

  std::vector<std::set<Rational>> rs(k);  // b_i^{-1} S_i
  for (int i = 0; i < k; ++i) {
    for (i64 j : f.S[i]) rs[i].insert(Rational(j, f.B[i]));
  }

  StructureReport r;
  r.B = f.B;
  r.alpha = f.alpha();
  r.bmax = f.bmax();

  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    // S(K): intersection of the rational sets over K
    std::vector<Rational> common;
    bool first = true;
    for (int i = 0; i < k && (first || !common.empty()); ++i) {
      if (!(mask & (1u << i))) continue;
      if (first) {
        common.assign(rs[i].begin(), rs[i].end());
        first = false;
      } else {
        std::vector<Rational> next;
        for (const Rational& t : common) {
          if (rs[i].count(t)) next.push_back(t);
        }
        common = std::move(next);
      }
    }
    if (common.empty()) continue;  // K not in the meet collection

    // T(K): drop values present in any row outside K
    std::vector<Rational> exclusive;
    for (const Rational& t : common) {
      bool outside = false;
      for (int i = 0; i < k && !outside; ++i) {
        if (!(mask & (1u << i)) && rs[i].count(t)) outside = true;
      }
      if (!outside) exclusive.push_back(t);
    }
    if (exclusive.empty()) continue;

    std::vector<int> kset;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) kset.push_back(i + 1);
    }
    r.e += static_cast<i64>(exclusive.size()) * (static_cast<i64>(kset.size()) - 1);
    r.kmax.emplace_back(std::move(kset), std::move(exclusive));
  }

  std::sort(r.kmax.begin(), r.kmax.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::set<std::vector<int>> lambda;
  for (const auto& [kset, tk] : r.kmax) add_even_subsets(kset, lambda);
  r.lambda.assign(lambda.begin(), lambda.end());

  if (r.lambda.empty()) {
    r.branch = Branch::plain;
  } else {
    bool all_square = true;
    for (const auto& index_set : r.lambda) {
      std::vector<i64> factors;
      for (int i : index_set) factors.push_back(f.B[i - 1]);
      if (!product_is_square(factors)) {
        all_square = false;
        break;
      }
    }
    r.branch = all_square ? Branch::amplified : Branch::oscillating;
  }
  return r;
}

std::vector<std::vector<std::pair<int, i64>>> enumerate_even_overlap_sets(const NormalizedFamily& f) {
  struct Element {
    int row;         // 1-based
    i64 offset;      // j in S_row
    unsigned value;  // id of the rational j / b_row
  };
  std::vector<Element> pool;
  std::map<Rational, unsigned> value_ids;
  for (int i = 0; i < f.k(); ++i) {
    for (i64 j : f.S[i]) {
      const Rational v(j, f.B[i]);
      auto [it, inserted] = value_ids.emplace(v, static_cast<unsigned>(value_ids.size()));
      pool.push_back({i + 1, j, it->second});
    }
  }
  const int alpha = static_cast<int>(pool.size());
  if (alpha > 20) throw InstanceTooLargeError("enumerate_even_overlap_sets: alpha capped at 20");

  std::vector<std::vector<std::pair<int, i64>>> result;
  for (unsigned mask = 1; mask < (1u << alpha); ++mask) {
    unsigned parity = 0;  // bit v set iff value v occurs an odd number of times
    for (int b = 0; b < alpha; ++b) {
      if (mask & (1u << b)) parity ^= 1u << pool[b].value;
    }
    if (parity != 0) continue;
    std::vector<std::pair<int, i64>> subset;
    for (int b = 0; b < alpha; ++b) {
      if (mask & (1u << b)) subset.emplace_back(pool[b].row, pool[b].offset);
    }
    result.push_back(std::move(subset));
  }
  return result;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int x, int y) { parent[find(x)] = find(y); }
};

void check_admissible(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::ap) throw std::invalid_argument("quotient diagram: spec must have kind ap");
  const std::size_t m = spec.b.size();
  std::set<i64> distinct(spec.b.begin(), spec.b.end());
  if (distinct.size() != m) throw std::domain_error("quotient diagram: b_i must be distinct");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const int128 cross = static_cast<int128>(spec.a[i]) * spec.b[j] -
                           static_cast<int128>(spec.a[j]) * spec.b[i];
      if (cross == 0) throw std::domain_error("quotient diagram: a_i*b_j == a_j*b_i, tuple not admissible");
    }
  }
}

}  // namespace

QuotientAnalysis quotient_diagram_e(const FamilySpec& ap_spec) {
  check_admissible(ap_spec);
  const int k = static_cast<int>(ap_spec.b.size());
  const i64 s = ap_spec.s;

  std::vector<Rational> q(k);
  for (int i = 0; i < k; ++i) q[i] = Rational(ap_spec.a[i], ap_spec.b[i]);

  // classes of base points with pairwise integer differences
  UnionFind uf(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if ((q[i] - q[j]).is_integer()) uf.merge(i, j);
    }
  }
  std::map<int, std::vector<int>> classes;
  for (int i = 0; i < k; ++i) classes[uf.find(i)].push_back(i);

  // relabeling into the ascending-B index space used by analyze()
  std::vector<i64> sorted_b(ap_spec.b.begin(), ap_spec.b.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  auto b_rank = [&](int orig) {
    return static_cast<int>(std::lower_bound(sorted_b.begin(), sorted_b.end(), ap_spec.b[orig]) -
                            sorted_b.begin()) + 1;
  };

  QuotientAnalysis out;
  std::set<std::vector<int>> lambda;

  for (auto& [root, members] : classes) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end(), [&](int x, int y) { return q[x] < q[y]; });

    std::vector<i64> gaps(members.size() - 1);
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      const Rational diff = q[members[i + 1]] - q[members[i]];
      gaps[i] = diff.num;  // integer by construction, positive by ordering
    }

    // maximal runs of gaps <= s-1 give the single-block diagrams
    std::size_t i = 0;
    while (i < gaps.size()) {
      if (gaps[i] > s - 1) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < gaps.size() && gaps[j] <= s - 1) ++j;

      QuotientDiagram::LabeledDiagram ld;
      ld.diagram = overlap_diagram(std::span<const i64>(gaps.data() + i, j - i), s);
      for (std::size_t r = i; r <= j; ++r) ld.row_labels.push_back(members[r] + 1);
      for (std::size_t r = i; r < j; ++r) {
        out.diagram.quotients.push_back({static_cast<i64>(members[r] + 1),
                                         static_cast<i64>(members[r + 1] + 1), gaps[r]});
        out.e += s - gaps[r];
      }

      // column label sets of this block -> even subsets, relabeled
      const std::size_t rows = j - i + 1;
      std::vector<i64> offset(rows, 0);
      for (std::size_t r = 1; r < rows; ++r) offset[r] = offset[r - 1] + gaps[i + r - 1];
      for (i64 x = 0; x <= offset[rows - 1] + s - 1; ++x) {
        std::vector<int> column;
        for (std::size_t r = 0; r < rows; ++r) {
          if (offset[r] <= x && x <= offset[r] + s - 1) column.push_back(b_rank(members[i + r]));
        }
        if (column.size() >= 2) {
          std::sort(column.begin(), column.end());
          add_even_subsets(column, lambda);
        }
      }
      out.diagram.diagrams.push_back(std::move(ld));
      i = j;
    }
  }

  out.lambda.assign(lambda.begin(), lambda.end());
  return out;
}

FamilySpec generate_admissible(std::span<const i64> d, i64 a1, i64 b1, std::span<const i64> t, i64 s) {
  if (d.empty() || d.size() != t.size()) {
    throw std::invalid_argument("generate_admissible: d and t must be nonempty and equal length");
  }
  if (a1 < 1 || b1 < 1) throw std::invalid_argument("generate_admissible: a1 and b1 must be positive");
  if (s < 1) throw std::invalid_argument("generate_admissible: s must be >= 1");
  for (i64 v : d) {
    if (v < 1) throw std::invalid_argument("generate_admissible: d entries must be positive");
  }
  for (i64 v : t) {
    if (v < 2) throw std::invalid_argument("generate_admissible: t entries must be >= 2");
  }

  const int k = static_cast<int>(d.size()) + 1;
  std::vector<i64> a{a1}, b{b1};
  constexpr i64 kMax = std::numeric_limits<i64>::max();
  for (int i = 0; i + 1 < k; ++i) {
    const int128 na = static_cast<int128>(t[i]) * (static_cast<int128>(a[i]) + static_cast<int128>(d[i]) * b[i]);
    const int128 nb = static_cast<int128>(t[i]) * b[i];
    if (na > kMax || nb > kMax) throw std::overflow_error("generate_admissible: tuple exceeds 64-bit range");
    a.push_back(static_cast<i64>(na));
    b.push_back(static_cast<i64>(nb));
  }

  // re-verify the divided-difference identity exactly
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      const int128 cross = static_cast<int128>(a[i]) * b[j] - static_cast<int128>(a[j]) * b[i];
      const int128 denom = static_cast<int128>(b[i]) * b[j];
      int128 dsum = 0;
      for (int r = j; r < i; ++r) dsum += d[r];
      if (cross % denom != 0 || cross / denom != dsum) {
        throw std::logic_error("generate_admissible: identity check failed");
      }
    }
  }
  return FamilySpec::ap_family(std::move(a), std::move(b), s);
}

}  // namespace qrap

#include "qrap/progressions.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qrap {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<i64> sorted_unique(std::vector<i64> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FamilySpec FamilySpec::shift_family(std::vector<i64> z) {
  require(!z.empty(), "shift family: Z must be nonempty");
  for (i64 v : z) require(v >= 0, "shift family: Z elements must be nonnegative");
  auto sorted = sorted_unique(std::move(z));
  FamilySpec f;
  f.kind = FamilyKind::shift;
  f.Z = std::move(sorted);
  return f;
}

FamilySpec FamilySpec::ap_family(std::vector<i64> a, std::vector<i64> b, i64 s) {
  require(!a.empty() && a.size() == b.size(), "ap family: a and b must be nonempty and equal length");
  require(s >= 1, "ap family: s must be >= 1");
  for (std::size_t j = 0; j < a.size(); ++j) {
    require(a[j] >= 0, "ap family: a_j must be nonnegative");
    require(b[j] >= 1, "ap family: b_j must be positive");
    if (static_cast<int128>(a[j]) + static_cast<int128>(b[j]) * (s - 1) >
        std::numeric_limits<i64>::max()) {
      throw std::overflow_error("ap family: a_j + b_j*(s-1) exceeds 64 bits");
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      require(a[i] != a[j] || b[i] != b[j], "ap family: pairs (a_j, b_j) must be distinct");
    }
  }
  FamilySpec f;
  f.kind = FamilyKind::ap;
  f.a = std::move(a);
  f.b = std::move(b);
  f.s = s;
  return f;
}

FamilySpec FamilySpec::normalized_family(std::vector<i64> B, std::vector<std::vector<i64>> S) {
  require(!B.empty() && B.size() == S.size(), "normalized family: B and S must be nonempty and equal length");
  std::set<i64> seen;
  for (i64 b : B) {
    require(b >= 1, "normalized family: B elements must be positive");
    require(seen.insert(b).second, "normalized family: B elements must be distinct");
  }
  for (auto& row : S) {
    require(!row.empty(), "normalized family: each S_i must be nonempty");
    for (i64 v : row) require(v >= 0, "normalized family: S_i elements must be nonnegative");
    row = sorted_unique(std::move(row));
  }
  FamilySpec f;
  f.kind = FamilyKind::normalized;
  f.B = std::move(B);
  f.S = std::move(S);
  return f;
}

i64 NormalizedFamily::bmax() const { return *std::max_element(B.begin(), B.end()); }

i64 NormalizedFamily::alpha() const {
  i64 a = 0;
  for (const auto& row : S) a += static_cast<i64>(row.size());
  return a;
}

std::vector<i64> NormalizedFamily::member(i64 n) const {
  std::vector<i64> out;
  for (std::size_t i = 0; i < B.size(); ++i) {
    for (i64 j : S[i]) out.push_back(B[i] * n + j);
  }
  return sorted_unique(std::move(out));
}

NormalizedFamily normalize(const FamilySpec& ap_spec) {
  require(ap_spec.kind == FamilyKind::ap, "normalize: spec must have kind ap");
  std::map<i64, std::vector<i64>> groups;  // b -> offsets a sharing it
  for (std::size_t j = 0; j < ap_spec.b.size(); ++j) groups[ap_spec.b[j]].push_back(ap_spec.a[j]);

  NormalizedFamily f;
  for (auto& [b, as] : groups) {
    std::vector<i64> row;
    for (i64 a : as) {
      for (i64 l = 0; l < ap_spec.s; ++l) row.push_back(a + b * l);
    }
    f.B.push_back(b);
    f.S.push_back(sorted_unique(std::move(row)));
  }
  return f;
}

NormalizedFamily as_normalized(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::shift: {
      NormalizedFamily f;
      f.B = {1};
      f.S = {spec.Z};
      return f;
    }
    case FamilyKind::ap:
      return normalize(spec);
    case FamilyKind::normalized: {
      NormalizedFamily f;
      f.B = spec.B;
      f.S = spec.S;
      // keep B ascending with rows following it
      std::vector<std::size_t> order(f.B.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return f.B[x] < f.B[y]; });
      NormalizedFamily g;
      for (std::size_t idx : order) {
        g.B.push_back(f.B[idx]);
        g.S.push_back(f.S[idx]);
      }
      return g;
    }
  }
  throw std::logic_error("as_normalized: bad kind");
}

std::vector<i64> ap_member(const FamilySpec& ap_spec, i64 n) {
  require(ap_spec.kind == FamilyKind::ap, "ap_member: spec must have kind ap");
  std::vector<i64> out;
  for (std::size_t j = 0; j < ap_spec.b.size(); ++j) {
    for (i64 i = 0; i < ap_spec.s; ++i) out.push_back(ap_spec.a[j] + ap_spec.b[j] * (n + i));
  }
  return sorted_unique(std::move(out));
}

i64 gamma_value(std::span<const i64> b, i64 s, GammaMode mode) {
  require(!b.empty(), "gamma: b must be nonempty");
  require(s >= 1, "gamma: s must be >= 1");
  for (i64 v : b) require(v >= 1, "gamma: b entries must be positive");

  if (mode == GammaMode::brute) {
    std::set<i64> u;
    for (i64 bj : b) {
      if (s > 1 && bj > std::numeric_limits<i64>::max() / (s - 1)) {
        throw std::overflow_error("gamma: (s-1)*b_j exceeds 64 bits");
      }
      for (i64 i = 0; i < s; ++i) u.insert(i * bj);
    }
    return static_cast<i64>(u.size());
  }

  const int k = static_cast<int>(b.size());
  if (k < 2) throw std::domain_error("gamma closed form: requires k >= 2");
  if (k > 24) throw InstanceTooLargeError("gamma closed form: k capped at 24");
  for (int i = 0; i + 1 < k; ++i) {
    if (b[i] >= b[i + 1]) throw std::domain_error("gamma closed form: b must be strictly increasing");
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (std::gcd(b[i], b[j]) != 1) throw std::domain_error("gamma closed form: b must be pairwise coprime");
    }
  }

  // 1 + k(s-1) plus the signed floor terms over subsets T of [2, k],
  // weighted by (min T - 1).
  i64 g = 1 + static_cast<i64>(k) * (s - 1);
  const int tail = k - 1;  // indices 2..k
  for (unsigned mask = 1; mask < (1u << tail); ++mask) {
    i64 prod = 1;
    int min_idx = 0;
    int size = 0;
    for (int bit = 0; bit < tail; ++bit) {
      if (!(mask & (1u << bit))) continue;
      if (min_idx == 0) min_idx = bit + 2;  // 1-based family index
      ++size;
      if (prod <= s - 1) {
        const int128 next = static_cast<int128>(prod) * b[bit + 1];
        prod = next > s - 1 ? s : static_cast<i64>(next);  // clamp: floor term is 0 past here
      }
    }
    const i64 term = (s - 1) / prod;
    if (term == 0) continue;
    const int l = size + 1;
    const i64 sign = (l % 2 == 0) ? -1 : 1;  // (-1)^(l+1)
    g += sign * static_cast<i64>(min_idx - 1) * term;
  }
  return g;
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

}  // namespace

DefectResult defect_and_cardinality(std::span<const i64> a, i64 b, i64 s) {
  require(!a.empty(), "defect: a must be nonempty");
  require(b >= 1, "defect: b must be positive");
  require(s >= 1, "defect: s must be >= 1");
  const int t = static_cast<int>(a.size());
  {
    std::set<i64> distinct(a.begin(), a.end());
    require(static_cast<int>(distinct.size()) == t, "defect: a elements must be distinct");
  }

  // group indices whose a_j / b differ by an integer
  UnionFind uf(t);
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      if ((a[i] - a[j]) % b == 0) uf.merge(i, j);
    }
  }
  std::map<int, std::vector<i64>> classes;  // root -> sorted a values
  for (int i = 0; i < t; ++i) classes[uf.find(i)].push_back(a[i]);

  i64 defect = 0;
  for (auto& [root, vals] : classes) {
    if (vals.size() < 2) continue;
    std::sort(vals.begin(), vals.end());
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
      const i64 gap = (vals[i + 1] - vals[i]) / b;  // exact by construction
      if (gap <= s - 1) defect += s - gap;
    }
  }
  return {defect, s * t - defect};
}

i64 alpha_of(const NormalizedFamily& f) { return f.alpha(); }

i64 alpha_checked(const FamilySpec& ap_spec) {
  require(ap_spec.kind == FamilyKind::ap, "alpha_checked: spec must have kind ap");
  const NormalizedFamily f = normalize(ap_spec);
  const i64 direct = f.alpha();

  std::map<i64, std::vector<i64>> groups;
  for (std::size_t j = 0; j < ap_spec.b.size(); ++j) groups[ap_spec.b[j]].push_back(ap_spec.a[j]);
  i64 total_defect = 0;
  for (const auto& [b, as] : groups) total_defect += defect_and_cardinality(as, b, ap_spec.s).defect;

  const i64 m = static_cast<i64>(ap_spec.a.size());
  if (direct != m * ap_spec.s - total_defect) {
    throw std::logic_error("alpha_checked: defect route disagrees with direct count");
  }
  return direct;
}

OverlapDiagram overlap_diagram(std::span<const i64> gaps, i64 s) {
  require(s >= 1, "overlap_diagram: s must be >= 1");
  for (i64 g : gaps) require(g >= 1, "overlap_diagram: gaps must be positive");

  OverlapDiagram d;
  d.s = s;
  d.gaps.assign(gaps.begin(), gaps.end());
  const int n = static_cast<int>(gaps.size());
  d.rows = n + 1;

  i64 in_block_loss = 0;
  int i = 0;
  while (i < n) {
    if (gaps[i] > s - 1) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && gaps[j] <= s - 1) ++j;  // run [i, j)
    OverlapDiagram::Block blk;
    blk.first_row = i + 1;
    blk.last_row = j + 1;
    blk.gap_run.assign(gaps.begin() + i, gaps.begin() + j);
    blk.columns = s;
    for (i64 g : blk.gap_run) {
      blk.columns += g;
      in_block_loss += s - g;
    }
    d.blocks.push_back(std::move(blk));
    i = j;
  }
  d.total_columns = s * d.rows - in_block_loss;
  return d;
}

}  // namespace qrap

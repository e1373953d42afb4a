#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "qrap/structure.hpp"

using namespace qrap;

namespace {

NormalizedFamily random_small_family(std::mt19937_64& rng, int max_k = 3, int max_row = 4,
                                     i64 value_cap = 20) {
  const int k = 1 + static_cast<int>(rng() % max_k);
  std::set<i64> bs;
  while (static_cast<int>(bs.size()) < k) bs.insert(1 + static_cast<i64>(rng() % 8));
  std::vector<std::vector<i64>> rows;
  for (int i = 0; i < k; ++i) {
    const int len = 1 + static_cast<int>(rng() % max_row);
    std::set<i64> row;
    while (static_cast<int>(row.size()) < len) row.insert(static_cast<i64>(rng() % value_cap));
    rows.emplace_back(row.begin(), row.end());
  }
  const FamilySpec spec = FamilySpec::normalized_family({bs.begin(), bs.end()}, std::move(rows));
  return as_normalized(spec);
}

FamilySpec random_admissible(std::mt19937_64& rng, bool keep_gaps_small) {
  const int k = 2 + static_cast<int>(rng() % 3);
  const i64 s = 2 + static_cast<i64>(rng() % 4);
  std::vector<i64> d(k - 1), t(k - 1);
  for (auto& v : d) {
    v = keep_gaps_small ? 1 + static_cast<i64>(rng() % (s - 1))
                        : 1 + static_cast<i64>(rng() % (s + 2));
  }
  for (auto& v : t) v = 2 + static_cast<i64>(rng() % 3);
  return generate_admissible(d, 1 + static_cast<i64>(rng() % 5), 1 + static_cast<i64>(rng() % 4), t, s);
}

// The no-interaction condition checked straight from the definition: for
// every pair of distinct-difference groups and every offset pair, b_i*b_j
// either does not divide a'*b_i - a*b_j or does so with quotient modulus > s-1.
bool no_small_quotients(const FamilySpec& spec) {
  const i64 s = spec.s;
  std::map<i64, std::vector<i64>> groups;
  for (std::size_t j = 0; j < spec.b.size(); ++j) groups[spec.b[j]].push_back(spec.a[j]);
  std::vector<std::pair<i64, std::vector<i64>>> g(groups.begin(), groups.end());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      const i64 bi = g[i].first, bj = g[j].first;
      for (i64 a : g[i].second) {
        for (i64 ap : g[j].second) {
          const int128 num = static_cast<int128>(ap) * bi - static_cast<int128>(a) * bj;
          const int128 den = static_cast<int128>(bi) * bj;
          if (num % den != 0) continue;
          int128 quot = num / den;
          if (quot < 0) quot = -quot;
          if (quot <= s - 1) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("structure") {
  TEST_CASE("analyze pinned examples") {
    {
      const auto r = analyze(as_normalized(FamilySpec::normalized_family({1, 2}, {{0}, {0}})));
      REQUIRE(r.kmax.size() == 1);
      CHECK(r.kmax[0].first == std::vector<int>{1, 2});
      CHECK(r.kmax[0].second == std::vector<Rational>{Rational(0)});
      CHECK(r.lambda == std::vector<std::vector<int>>{{1, 2}});
      CHECK(r.alpha == 2);
      CHECK(r.bmax == 2);
      CHECK(r.e == 1);
      CHECK(r.branch == Branch::oscillating);
    }
    {
      const auto r = analyze(as_normalized(FamilySpec::normalized_family({1, 2}, {{1}, {1}})));
      REQUIRE(r.kmax.size() == 2);
      CHECK(r.kmax[0].first == std::vector<int>{1});
      CHECK(r.kmax[1].first == std::vector<int>{2});
      CHECK(r.lambda.empty());
      CHECK(r.e == 0);
      CHECK(r.branch == Branch::plain);
    }
    {
      const auto r = analyze(as_normalized(FamilySpec::normalized_family({1, 4}, {{0}, {0}})));
      CHECK(r.lambda == std::vector<std::vector<int>>{{1, 2}});
      CHECK(r.e == 1);
      CHECK(r.branch == Branch::amplified);
    }
  }

  TEST_CASE("structure invariants on random families") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      const NormalizedFamily f = random_small_family(rng);
      const StructureReport r = analyze(f);

      // T(K) sets pairwise disjoint across kmax
      std::set<Rational> seen;
      bool all_singletons = true;
      for (const auto& [kset, tk] : r.kmax) {
        REQUIRE(!tk.empty());
        if (kset.size() > 1) all_singletons = false;
        for (const Rational& t : tk) REQUIRE(seen.insert(t).second);
      }
      // lambda empty iff e == 0 iff every kmax entry is a singleton
      REQUIRE((r.e == 0) == r.lambda.empty());
      REQUIRE((r.e == 0) == all_singletons);
      REQUIRE(r.e >= 0);
      REQUIRE(r.alpha == f.alpha());
    }
  }

  TEST_CASE("analyze agrees with the incidence-map construction") {
    // Independent route: bucket every rational value by the exact set of rows
    // containing it; the buckets are T(K) keyed by K, and e falls out of the
    // bucket sizes. No subset enumeration involved.
    std::mt19937_64 rng(271);
    for (int trial = 0; trial < 300; ++trial) {
      const NormalizedFamily f = random_small_family(rng, 4, 5, 24);
      std::map<Rational, std::set<int>> incidence;
      for (int i = 0; i < f.k(); ++i) {
        for (i64 j : f.S[i]) incidence[Rational(j, f.B[i])].insert(i + 1);
      }
      std::map<std::vector<int>, std::vector<Rational>> buckets;
      for (const auto& [value, rows] : incidence) {
        buckets[{rows.begin(), rows.end()}].push_back(value);
      }
      i64 expected_e = 0;
      for (const auto& [rows, values] : buckets) {
        expected_e += static_cast<i64>(values.size()) * (static_cast<i64>(rows.size()) - 1);
      }

      const StructureReport r = analyze(f);
      REQUIRE(r.e == expected_e);
      REQUIRE(r.kmax.size() == buckets.size());
      for (const auto& [kset, tk] : r.kmax) {
        auto it = buckets.find(kset);
        REQUIRE(it != buckets.end());
        REQUIRE(tk == it->second);
      }
    }
  }

  TEST_CASE("even-overlap subsets agree with multiset parity counting") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      NormalizedFamily f = random_small_family(rng, 3, 3, 10);
      if (f.alpha() > 10) continue;
      const auto fast = enumerate_even_overlap_sets(f);

      // slow oracle: literal multiset parity over rational values
      std::vector<std::pair<int, i64>> pool;
      for (int i = 0; i < f.k(); ++i) {
        for (i64 j : f.S[i]) pool.emplace_back(i + 1, j);
      }
      std::vector<std::vector<std::pair<int, i64>>> slow;
      for (unsigned mask = 1; mask < (1u << pool.size()); ++mask) {
        std::map<Rational, int> counts;
        std::vector<std::pair<int, i64>> subset;
        for (std::size_t b = 0; b < pool.size(); ++b) {
          if (mask & (1u << b)) {
            ++counts[Rational(pool[b].second, f.B[pool[b].first - 1])];
            subset.push_back(pool[b]);
          }
        }
        bool even = true;
        for (const auto& [value, count] : counts) {
          if (count % 2 != 0) even = false;
        }
        if (even) slow.push_back(std::move(subset));
      }
      REQUIRE(fast == slow);
    }
  }

  TEST_CASE("even-overlap subsets pinned examples") {
    {
      const auto e = enumerate_even_overlap_sets(as_normalized(FamilySpec::normalized_family({1, 2}, {{0}, {0}})));
      REQUIRE(e.size() == 1);
      CHECK(e[0] == std::vector<std::pair<int, i64>>{{1, 0}, {2, 0}});
    }
    CHECK(enumerate_even_overlap_sets(as_normalized(FamilySpec::normalized_family({1}, {{0, 1}}))).empty());
    CHECK(enumerate_even_overlap_sets(as_normalized(FamilySpec::normalized_family({1, 2}, {{1}, {1}}))).empty());
  }

  TEST_CASE("even-overlap subset count is 2^e - 1") {
    std::mt19937_64 rng(77);
    int done = 0;
    while (done < 200) {
      const NormalizedFamily f = random_small_family(rng);
      if (f.alpha() > 12) continue;  // keep the 2^alpha scan quick
      const StructureReport r = analyze(f);
      const auto sets = enumerate_even_overlap_sets(f);
      REQUIRE(static_cast<i64>(sets.size()) == (i64{1} << r.e) - 1);
      ++done;
    }
  }

  TEST_CASE("even-overlap cap") {
    // alpha = 21 exceeds the brute-force cap
    std::vector<i64> big;
    for (i64 v = 0; v < 21; ++v) big.push_back(v);
    CHECK_THROWS_AS(enumerate_even_overlap_sets(as_normalized(FamilySpec::normalized_family({1}, {big}))),
                    InstanceTooLargeError);
  }

  TEST_CASE("quotient diagram pinned shapes") {
    // single overlap of quotient q: e = s - q
    for (i64 s = 2; s <= 5; ++s) {
      for (i64 q = 1; q <= s - 1; ++q) {
        const FamilySpec spec = generate_admissible(std::vector<i64>{q}, 1, 1, std::vector<i64>{2}, s);
        const auto qa = quotient_diagram_e(spec);
        CHECK(qa.e == s - q);
        REQUIRE(qa.diagram.diagrams.size() == 1);
        CHECK(qa.diagram.diagrams[0].diagram.blocks.size() == 1);
      }
    }
    // minimal overlap: gaps all s-1 over k rows -> e = k-1
    for (int k = 2; k <= 5; ++k) {
      const i64 s = 3;
      const FamilySpec spec = generate_admissible(std::vector<i64>(k - 1, s - 1), 1, 1,
                                                  std::vector<i64>(k - 1, 2), s);
      CHECK(quotient_diagram_e(spec).e == k - 1);
    }
    // maximal overlap: gaps all 1, s = k -> e = (k-1)^2
    for (int k = 3; k <= 6; ++k) {
      const FamilySpec spec = generate_admissible(std::vector<i64>(k - 1, 1), 1, 1,
                                                  std::vector<i64>(k - 1, 2), k);
      CHECK(quotient_diagram_e(spec).e == static_cast<i64>(k - 1) * (k - 1));
    }
  }

  TEST_CASE("quotient diagram agrees with the subset analysis") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      const FamilySpec spec = random_admissible(rng, /*keep_gaps_small=*/true);
      const auto qa = quotient_diagram_e(spec);
      const auto r = analyze(normalize(spec));
      REQUIRE(qa.e == r.e);
      REQUIRE(qa.lambda == r.lambda);
    }
    // also with gaps that split the diagram
    for (int trial = 0; trial < 100; ++trial) {
      const FamilySpec spec = random_admissible(rng, /*keep_gaps_small=*/false);
      const auto qa = quotient_diagram_e(spec);
      const auto r = analyze(normalize(spec));
      REQUIRE(qa.e == r.e);
      REQUIRE(qa.lambda == r.lambda);
    }
  }

  TEST_CASE("quotient diagram invariants") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
      const FamilySpec spec = random_admissible(rng, false);
      const auto qa = quotient_diagram_e(spec);
      std::set<int> all_labels;
      for (const auto& ld : qa.diagram.diagrams) {
        REQUIRE(ld.diagram.blocks.size() == 1);  // single block each
        for (i64 g : ld.diagram.gaps) REQUIRE(g <= spec.s - 1);
        for (int label : ld.row_labels) REQUIRE(all_labels.insert(label).second);
      }
    }
  }

  TEST_CASE("plain branch exactly when no small quotients exist") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      const int m = 1 + static_cast<int>(rng() % 3);
      std::vector<i64> a(m), b(m);
      std::set<std::pair<i64, i64>> seen;
      bool ok = true;
      for (int j = 0; j < m; ++j) {
        a[j] = static_cast<i64>(rng() % 15);
        b[j] = 1 + static_cast<i64>(rng() % 5);
        if (!seen.insert({a[j], b[j]}).second) ok = false;
      }
      if (!ok) continue;
      const i64 s = 1 + static_cast<i64>(rng() % 4);
      const FamilySpec spec = FamilySpec::ap_family(a, b, s);
      const bool condition = no_small_quotients(spec);
      const auto r = analyze(normalize(spec));
      REQUIRE((r.branch == Branch::plain) == condition);
    }
  }

  TEST_CASE("generate_admissible pinned example and identity") {
    const FamilySpec spec = generate_admissible(std::vector<i64>{2}, 1, 1, std::vector<i64>{2}, 1);
    CHECK(spec.a == std::vector<i64>{1, 6});
    CHECK(spec.b == std::vector<i64>{1, 2});

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
      const int k = 2 + static_cast<int>(rng() % 4);
      std::vector<i64> d(k - 1), t(k - 1);
      for (auto& v : d) v = 1 + static_cast<i64>(rng() % 6);
      for (auto& v : t) v = 2 + static_cast<i64>(rng() % 4);
      const i64 a1 = 1 + static_cast<i64>(rng() % 9);
      const i64 b1 = 1 + static_cast<i64>(rng() % 9);
      const FamilySpec spec2 = generate_admissible(d, a1, b1, t, 2);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < i; ++j) {
          int128 dsum = 0;
          for (int r = j; r < i; ++r) dsum += d[r];
          const int128 lhs = static_cast<int128>(spec2.a[i]) * spec2.b[j] -
                             static_cast<int128>(spec2.a[j]) * spec2.b[i];
          REQUIRE(lhs == dsum * spec2.b[i] * spec2.b[j]);
        }
      }
    }
  }

  TEST_CASE("square and prime multipliers force the expected branches") {
    // squares: b1 and every t_i a perfect square
    const FamilySpec sq = generate_admissible(std::vector<i64>{1, 2}, 1, 1, std::vector<i64>{4, 4}, 3);
    CHECK(analyze(normalize(sq)).branch == Branch::amplified);
    // distinct primes
    const FamilySpec pr = generate_admissible(std::vector<i64>{1, 2}, 1, 2, std::vector<i64>{3, 5}, 3);
    CHECK(analyze(normalize(pr)).branch == Branch::oscillating);
  }

  TEST_CASE("non-admissible specs are rejected") {
    CHECK_THROWS_AS(quotient_diagram_e(FamilySpec::ap_family({0, 0}, {1, 2}, 1)), std::domain_error);
    CHECK_THROWS_AS(quotient_diagram_e(FamilySpec::ap_family({1, 2}, {1, 1}, 2)), std::domain_error);
    CHECK_THROWS_AS(quotient_diagram_e(FamilySpec::ap_family({1, 2}, {2, 4}, 2)), std::domain_error);
  }

  TEST_CASE("generate_admissible overflow") {
    const std::vector<i64> d(40, 1);
    const std::vector<i64> t(40, 7);
    CHECK_THROWS_AS(generate_admissible(d, 1, 1, t, 2), std::overflow_error);
  }
}

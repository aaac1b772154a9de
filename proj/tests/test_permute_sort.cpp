#include <gtest/gtest.h>

#include "support.hpp"

using namespace sortsweep;

namespace {

std::vector<ReductionCandidate> sorted_scan(const Formula& f, bool r4 = false) {
  auto sorted = sort_records(expand_permutations(f));
  return scan_adjacent(sorted.records, ScanOptions{r4});
}

}  // namespace

TEST(Permutations, RecordCountPerWidth) {
  auto f = formula_from_dimacs(4, {{1, 2, 3}, {1, -4}, {2}});
  auto rs = expand_permutations(f);
  EXPECT_EQ(rs.size(), 6u + 2u + 1u);
  std::set<std::array<uint32_t, 3>> keys;
  for (const auto& r : rs)
    if (r.source == 1) keys.insert(r.key);
  EXPECT_EQ(keys.size(), 6u);
  for (const auto& r : rs)
    for (size_t k = r.width; k < 3; ++k) EXPECT_EQ(r.key[k], kSentinel);
}

TEST(Permutations, EveryOrderingOfTheClause) {
  auto f = formula_from_dimacs(3, {{1, -2, 3}});
  auto rs = expand_permutations(f);
  std::set<std::array<uint32_t, 3>> keys;
  for (const auto& r : rs) keys.insert(r.key);
  std::array<uint32_t, 3> base{1, 4, 5};
  do EXPECT_TRUE(keys.count(base)); while (std::next_permutation(base.begin(), base.end()));
}

TEST(Sort, OrdersRecordsAndCountsComparisons) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    uint32_t n = 3 + static_cast<uint32_t>(rng() % 8);
    auto f = formula_from_dimacs(n, testsupport::random_clean(rng, n, rng() % 40));
    auto rs = expand_permutations(f);
    auto expect = rs;
    std::sort(expect.begin(), expect.end(), [](const PermRecord& a, const PermRecord& b) {
      return std::tie(a.key, a.source) < std::tie(b.key, b.source);
    });
    auto got = sort_records(rs);
    EXPECT_EQ(got.records, expect);
    EXPECT_EQ(got.stats.record_count, rs.size());
    EXPECT_LE(static_cast<double>(got.stats.comparisons), comparison_bound(rs.size()));
  }
}

TEST(Sort, BoundValues) {
  EXPECT_EQ(comparison_bound(0), 0.0);
  EXPECT_EQ(comparison_bound(1), 1.0);
  EXPECT_DOUBLE_EQ(comparison_bound(8), 2.0 * 8 * 3 + 8);
  auto one = sort_records({PermRecord{}});
  EXPECT_EQ(one.stats.comparisons, 0u);
}

TEST(Scan, ComplementaryPairMerges) {
  // (A+B+C).(!A+B+C)
  auto f = formula_from_dimacs(3, {{1, 2, 3}, {-1, 2, 3}});
  auto cs = sorted_scan(f);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].kind, Rule::R1Merge);
  EXPECT_EQ(cs[0].sources, (std::array<ClauseId, 2>{1, 2}));
  EXPECT_EQ(cs[0].detail, from_dimacs(1));
}

TEST(Scan, PivotDetailBelongsToFirstSource) {
  auto f = formula_from_dimacs(3, {{-1, 2, 3}, {1, 2, 3}});
  auto cs = sorted_scan(f);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].detail, from_dimacs(-1));
}

TEST(Scan, SubsumptionAndUnitResolution) {
  auto f = formula_from_dimacs(4, {{1, 2, 3}, {2}, {-2, 4}, {1, 3}});
  auto got = testsupport::tuples(sorted_scan(f));
  std::set<testsupport::CandTuple> want{
      {int(Rule::Subsume), 2, 1, 0},
      {int(Rule::Subsume), 4, 1, 0},
      {int(Rule::UnitResolve), 2, 3, 2},
  };
  EXPECT_EQ(got, want);
}

TEST(Scan, ComplementaryUnitsAreUnitResolution) {
  auto f = formula_from_dimacs(2, {{-1}, {1}});
  auto cs = sorted_scan(f);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].kind, Rule::UnitResolve);
  EXPECT_EQ(cs[0].sources, (std::array<ClauseId, 2>{1, 2}));
  EXPECT_EQ(cs[0].detail, from_dimacs(-1));
}

TEST(Scan, SelfSubsumptionOnlyWhenEnabled) {
  // (Q+W).(!Q+W+E): W shared, Q opposed
  auto f = formula_from_dimacs(3, {{1, 2}, {-1, 2, 3}});
  EXPECT_TRUE(sorted_scan(f, false).empty());
  auto cs = sorted_scan(f, true);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].kind, Rule::SelfSubsume);
  EXPECT_EQ(cs[0].detail, from_dimacs(-1));
}

TEST(Scan, OpposedPairsOnTwoPositionsAreNotMerged) {
  auto f = formula_from_dimacs(3, {{1, 2, 3}, {-1, -2, 3}});
  EXPECT_TRUE(sorted_scan(f).empty());
}

TEST(Scan, PairwiseCountsEveryPair) {
  auto f = formula_from_dimacs(5, {{1}, {2}, {3}, {4}, {5}});
  uint64_t tests = 0;
  pairwise_candidates(f.clauses(), {}, &tests);
  EXPECT_EQ(tests, 10u);
}

TEST(Scan, BothRoutesMatchTheReferenceOnSmallFormulas) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 3000; ++t) {
    uint32_t n = 2 + static_cast<uint32_t>(rng() % 7);
    bool r4 = t % 2;
    auto f = formula_from_dimacs(n, testsupport::random_raw(rng, n, 1 + rng() % 16));
    auto want = testsupport::reference_candidates(f, r4);
    auto sorted = sorted_scan(f, r4);
    auto pairwise = pairwise_candidates(f.clauses(), ScanOptions{r4});
    ASSERT_EQ(testsupport::tuples(sorted), want) << write_dimacs(f);
    ASSERT_EQ(testsupport::tuples(pairwise), want) << write_dimacs(f);
    EXPECT_EQ(sorted, pairwise);
    EXPECT_TRUE(std::is_sorted(sorted.begin(), sorted.end()));
  }
}

TEST(Scan, DeterministicAcrossRuns) {
  std::mt19937_64 rng(8);
  auto f = formula_from_dimacs(12, testsupport::random_clean(rng, 12, 60));
  auto a = sorted_scan(f, true);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(sorted_scan(f, true), a);
}

#include <gtest/gtest.h>

#include "support.hpp"

using namespace sortsweep;

TEST(Literal, EncodingOfSmallVariables) {
  EXPECT_EQ(encode_literal(Var{1}, false).index(), 1u);
  EXPECT_EQ(encode_literal(Var{1}, true).index(), 2u);
  EXPECT_EQ(encode_literal(Var{5}, false).index(), 9u);
  EXPECT_EQ(encode_literal(Var{5}, true).index(), 10u);
  EXPECT_EQ(from_dimacs(-3).index(), 6u);
  EXPECT_EQ(Literal(6).dimacs(), -3);
  EXPECT_EQ(Literal(7).dimacs(), 4);
}

TEST(Literal, ComplementFlipsParity) {
  EXPECT_EQ(complement(Literal(1)).index(), 2u);
  EXPECT_EQ(complement(Literal(2)).index(), 1u);
  EXPECT_EQ(complement(Literal(41)).index(), 42u);
}

TEST(Literal, EncodingIsABijectionAndComplementAnInvolution) {
  for (uint32_t v = 1; v <= 5000; ++v)
    for (bool neg : {false, true}) {
      Literal l = encode_literal(Var{v}, neg);
      EXPECT_EQ(l.var().id, v);
      EXPECT_EQ(l.negated(), neg);
      EXPECT_EQ(complement(complement(l)), l);
      EXPECT_NE(complement(l), l);
      EXPECT_EQ(complement(l).var().id, v);
      EXPECT_EQ(from_dimacs(l.dimacs()), l);
    }
  for (uint32_t i = 1; i < 10000; ++i) EXPECT_EQ(encode_literal(Literal(i).var(), Literal(i).negated()).index(), i);
}

TEST(Literal, LargestVariableFitsInThirtyTwoBits) {
  Literal l = encode_literal(Var{kMaxVar}, true);
  EXPECT_EQ(l.var().id, kMaxVar);
  EXPECT_EQ(complement(complement(l)), l);
}

TEST(ClauseLits, NormalizeSortsAndDeduplicates) {
  std::vector<Literal> raw{from_dimacs(3), from_dimacs(-1), from_dimacs(3)};
  auto n = normalize_clause(raw);
  ASSERT_EQ(n.kind, NormalKind::Clause);
  ASSERT_EQ(n.lits.width(), 2u);
  EXPECT_EQ(n.lits[0], from_dimacs(-1));
  EXPECT_EQ(n.lits[1], from_dimacs(3));
}

TEST(ClauseLits, NormalizeDetectsTautologyAndEmpty) {
  std::vector<Literal> t{from_dimacs(2), from_dimacs(-2), from_dimacs(1)};
  EXPECT_EQ(normalize_clause(t).kind, NormalKind::Tautology);
  EXPECT_EQ(normalize_clause({}).kind, NormalKind::Empty);
}

TEST(ClauseLits, WidthIsCheckedAfterDeduplication) {
  std::vector<Literal> four{from_dimacs(1), from_dimacs(2), from_dimacs(3), from_dimacs(1)};
  EXPECT_EQ(normalize_clause(four).lits.width(), 3u);
  std::vector<Literal> wide{from_dimacs(1), from_dimacs(2), from_dimacs(3), from_dimacs(4)};
  try {
    normalize_clause(wide);
    FAIL() << "expected WidthExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WidthExceeded);
  }
  // a wide tautology is still rejected for width
  std::vector<Literal> wide_taut{from_dimacs(1), from_dimacs(-1), from_dimacs(3), from_dimacs(4)};
  EXPECT_THROW(normalize_clause(wide_taut), Error);
}

TEST(ClauseLits, NormalizeIsIdempotent) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto raw = testsupport::random_raw(rng, 4, 1)[0];
    std::vector<Literal> lits;
    for (int x : raw) lits.push_back(from_dimacs(x));
    auto once = normalize_clause(lits);
    auto again = normalize_clause(once.lits.literals());
    EXPECT_EQ(once.kind, again.kind);
    EXPECT_EQ(once.lits, again.lits);
    EXPECT_TRUE(std::is_sorted(once.lits.begin(), once.lits.end()));
  }
}

TEST(ClauseLits, SubsetWithoutContains) {
  auto a = ClauseLits::of({1, 4});
  auto b = ClauseLits::of({1, 4, 5});
  EXPECT_TRUE(a.subset_of(b));
  EXPECT_FALSE(b.subset_of(a));
  EXPECT_EQ(b.without(Literal(5)), a);
  EXPECT_TRUE(b.contains(Literal(4)));
  EXPECT_FALSE(b.contains(Literal(3)));
}

TEST(Clause, RejectsEmptyAndTautological) {
  EXPECT_THROW(Clause(1, ClauseLits{}), Error);
  EXPECT_THROW(Clause(1, ClauseLits::of({1, 2})), Error);
  EXPECT_NO_THROW(Clause(1, ClauseLits::of({1, 3})));
}

TEST(Formula, IdsFollowInputOrderAndDropsConsumeIds) {
  auto f = formula_from_dimacs(3, {{1, 2}, {2, -2}, {2, 1}, {-3}});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.clauses()[0].id(), 1u);
  EXPECT_EQ(f.clauses()[1].id(), 4u);
  ASSERT_EQ(f.dropped().size(), 2u);
  EXPECT_EQ(f.dropped()[0].reason, DropReason::Tautology);
  EXPECT_EQ(f.dropped()[0].id, 2u);
  EXPECT_EQ(f.dropped()[1].reason, DropReason::Duplicate);
  EXPECT_EQ(f.dropped()[1].duplicate_of, 1u);
  EXPECT_EQ(f.input_clause_count(), 4u);
  EXPECT_EQ(f.next_id(), 5u);
  EXPECT_EQ(f.literal_instances(), 3u);
}

TEST(Formula, EmptyClauseMarksContradiction) {
  auto f = formula_from_dimacs(2, {{1}, {}});
  EXPECT_TRUE(f.has_empty_clause());
  EXPECT_FALSE(evaluate(f, Assignment::all(2, true)));
}

TEST(Formula, RejectsOutOfRangeVariables) {
  try {
    formula_from_dimacs(2, {{1, 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::VarOutOfRange);
  }
}

TEST(Formula, SameClausesIgnoresIds) {
  auto a = formula_from_dimacs(3, {{1, 2}, {-3}});
  auto b = formula_from_dimacs(3, {{-3}, {2, 1}});
  EXPECT_TRUE(a.same_clauses(b));
  EXPECT_FALSE(a.same_clauses(formula_from_dimacs(3, {{1, 2}})));
}

TEST(Assignment, ValuesOfLiterals) {
  Assignment a(3);
  EXPECT_FALSE(a.is_total());
  a.assign(from_dimacs(-2));
  EXPECT_EQ(a.value(from_dimacs(2)), Truth::False);
  EXPECT_EQ(a.value(from_dimacs(-2)), Truth::True);
  EXPECT_EQ(a.value(from_dimacs(1)), Truth::Unset);
  auto c = a.completed(true);
  EXPECT_TRUE(c.is_total());
  EXPECT_EQ(c.value(Var{1}), Truth::True);
  EXPECT_EQ(c.value(Var{2}), Truth::False);
}

TEST(Evaluate, RequiresTotalAssignment) {
  auto f = formula_from_dimacs(2, {{1, 2}});
  try {
    evaluate(f, Assignment(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IncompleteAssignment);
  }
  EXPECT_THROW(evaluate(f, Assignment::all(1, true)), Error);
}

TEST(Evaluate, AgreesWithDirectEvaluation) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    uint32_t n = 1 + static_cast<uint32_t>(rng() % 6);
    auto raw = testsupport::random_raw(rng, n, rng() % 8);
    auto f = formula_from_dimacs(n, raw);
    for (uint64_t b = 0; b < (uint64_t{1} << n); ++b)
      ASSERT_EQ(evaluate(f, testsupport::assignment_of(b, n)), testsupport::satisfies(raw, b));
  }
}

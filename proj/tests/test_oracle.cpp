#include <gtest/gtest.h>

#include "support.hpp"

using namespace sortsweep;

namespace {

// lexicographic rank with variable 1 most significant
uint64_t lex_rank(uint64_t bits, uint32_t n) {
  uint64_t r = 0;
  for (uint32_t v = 1; v <= n; ++v) r = (r << 1) | ((bits >> (v - 1)) & 1);
  return r;
}

}  // namespace

TEST(TruthTable, CountsAndFirstModelMatchReference) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 800; ++t) {
    uint32_t n = 1 + static_cast<uint32_t>(rng() % 10);
    auto raw = testsupport::random_raw(rng, n, rng() % (5 * n));
    auto f = formula_from_dimacs(n, raw);
    auto mods = testsupport::models(raw, n);
    auto r = truth_table_solve(f);
    ASSERT_EQ(*r.model_count, mods.size());
    EXPECT_EQ(r.verdict == Verdict::Sat, !mods.empty());
    if (mods.empty()) continue;
    uint64_t best = *std::min_element(mods.begin(), mods.end(), [&](uint64_t a, uint64_t b) {
      return lex_rank(a, n) < lex_rank(b, n);
    });
    EXPECT_EQ(testsupport::bits_of(*r.witness), best);
    auto first = truth_table_solve(f, false);
    EXPECT_FALSE(first.model_count.has_value());
    EXPECT_EQ(*first.witness, *r.witness);
  }
}

TEST(TruthTable, WideBlocks) {
  // 14 variables: every block above the first 64 assignments is exercised
  std::vector<std::vector<int>> raw;
  for (int v = 1; v <= 13; ++v) raw.push_back({v, v + 1});
  auto f = formula_from_dimacs(14, raw);
  EXPECT_EQ(*truth_table_solve(f).model_count, testsupport::models(raw, 14).size());
}

TEST(TruthTable, RefusesLargeInstances) {
  auto f = formula_from_dimacs(25, {{25}});
  try {
    truth_table_solve(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
  EXPECT_EQ(backtracking_solve(f).verdict, Verdict::Sat);
}

TEST(TruthTable, EdgeCases) {
  EXPECT_EQ(*truth_table_solve(formula_from_dimacs(0, {})).model_count, 1u);
  EXPECT_EQ(*truth_table_solve(formula_from_dimacs(3, {})).model_count, 8u);
  EXPECT_EQ(*truth_table_solve(formula_from_dimacs(3, {{1}, {}})).model_count, 0u);
  EXPECT_EQ(truth_table_solve(gen_complete_signs(3)).verdict, Verdict::Unsat);
}

TEST(Backtracking, AgreesWithTruthTable) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 600; ++t) {
    uint32_t n = 3 + static_cast<uint32_t>(rng() % 14);
    auto f = formula_from_dimacs(n, testsupport::random_clean(rng, n, rng() % (6 * n)));
    auto tt = truth_table_solve(f, false);
    auto bt = backtracking_solve(f);
    ASSERT_EQ(tt.verdict, bt.verdict) << write_dimacs(f);
    if (bt.witness) { EXPECT_TRUE(evaluate(f, *bt.witness)); }
  }
}

TEST(Equivalence, MatchesReferenceModelSets) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 400; ++t) {
    uint32_t n = 2 + static_cast<uint32_t>(rng() % 4);
    auto ra = testsupport::random_raw(rng, n, rng() % 6);
    auto rb = testsupport::random_raw(rng, n, rng() % 6);
    auto a = formula_from_dimacs(n, ra), b = formula_from_dimacs(n, rb);
    bool want = testsupport::models(ra, n) == testsupport::models(rb, n);
    EXPECT_EQ(equivalent(a, b), want) << write_dimacs(a) << write_dimacs(b);
    EXPECT_EQ(equivalent(b, a), equivalent(a, b));
    EXPECT_TRUE(equivalent(a, a));
  }
}

TEST(Equivalence, IgnoresVariablesOccurringNowhere) {
  auto a = formula_from_dimacs(3, {{1, 2}});
  auto b = formula_from_dimacs(9, {{2, 1}});
  EXPECT_TRUE(equivalent(a, b));
  EXPECT_EQ(compact_variables(formula_from_dimacs(9, {{4, -9}})).num_vars(), 2u);
}

TEST(Equivalence, DistributionIdentityInClauseForm) {
  // QA + WA + EA written as clauses: (Q+W+E).(A)
  auto cnf = letters::parse("(Q+W+E).(A)");
  auto dnf = Expr::any({Expr::all({Expr::literal(letters::pos('Q')), Expr::literal(letters::pos('A'))}),
                        Expr::all({Expr::literal(letters::pos('W')), Expr::literal(letters::pos('A'))}),
                        Expr::all({Expr::literal(letters::pos('E')), Expr::literal(letters::pos('A'))})});
  EXPECT_TRUE(equivalent(Expr::from_formula(cnf), dnf));
  // independent check over the four letters
  for (int x = 0; x < 16; ++x) {
    bool q = x & 1, w = x & 2, e = x & 4, a = x & 8;
    bool lhs = (q || w || e) && a;
    bool rhs = (q && a) || (w && a) || (e && a);
    EXPECT_EQ(lhs, rhs);
    Assignment asg(26, Truth::False);
    asg.set(Var{17}, q);
    asg.set(Var{23}, w);
    asg.set(Var{5}, e);
    asg.set(Var{1}, a);
    EXPECT_EQ(evaluate(cnf, asg), lhs);
    EXPECT_EQ(dnf.eval(asg), rhs);
  }
}

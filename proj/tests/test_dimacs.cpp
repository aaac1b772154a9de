#include <gtest/gtest.h>

#include "support.hpp"

using namespace sortsweep;

namespace {

const Diagnostic* find_kind(const ParseResult& r, DiagKind k) {
  for (const auto& d : r.diagnostics)
    if (d.kind == k) return &d;
  return nullptr;
}

}  // namespace

TEST(Dimacs, ParsesCommentsAndMultiLineClauses) {
  auto r = parse_dimacs("c hello\np cnf 3 2\n1 -2\n 3 0 -1 0\n");
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.diagnostics.empty());
  ASSERT_EQ(r.formula->size(), 2u);
  EXPECT_EQ(r.formula->clauses()[0].lits(), ClauseLits::of({1, 4, 5}));
  EXPECT_EQ(r.formula->clauses()[1].lits(), ClauseLits::of({2}));
}

TEST(Dimacs, PercentLineEndsInput) {
  auto r = parse_dimacs("p cnf 2 1\n1 2 0\n%\n0\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.formula->size(), 1u);
  EXPECT_FALSE(r.formula->has_empty_clause());
}

TEST(Dimacs, WidthErrorNamesTheClauseLine) {
  auto r = parse_dimacs("p cnf 4 2\n1 2 0\n\n1 2\n3 4 0\n");
  EXPECT_FALSE(r.ok());
  ASSERT_NE(r.first_error(), nullptr);
  EXPECT_EQ(r.first_error()->kind, DiagKind::WidthExceeded);
  EXPECT_EQ(r.first_error()->line, 4u);
}

TEST(Dimacs, VariableOutOfRange) {
  auto r = parse_dimacs("p cnf 2 1\n1 -3 0\n");
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.first_error()->kind, DiagKind::VarOutOfRange);
  EXPECT_EQ(r.first_error()->line, 2u);
}

TEST(Dimacs, MissingHeaderIsAnError) {
  auto r = parse_dimacs("1 2 0\n");
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.first_error()->kind, DiagKind::MissingHeader);
  EXPECT_FALSE(parse_dimacs("").ok());
  EXPECT_FALSE(parse_dimacs("c only comments\n").ok());
}

TEST(Dimacs, SyntaxErrors) {
  EXPECT_EQ(parse_dimacs("p cnf 3\n").first_error()->kind, DiagKind::SyntaxError);
  EXPECT_EQ(parse_dimacs("p dnf 3 1\n").first_error()->kind, DiagKind::SyntaxError);
  EXPECT_EQ(parse_dimacs("p cnf 3 1\n1 x 0\n").first_error()->kind, DiagKind::SyntaxError);
  EXPECT_EQ(parse_dimacs("p cnf 3 1\np cnf 3 1\n").first_error()->kind, DiagKind::SyntaxError);
  EXPECT_EQ(parse_dimacs("p cnf -1 1\n").first_error()->kind, DiagKind::SyntaxError);
  EXPECT_EQ(parse_dimacs("p cnf 3 1\n1 99999999999999999999 0\n").first_error()->kind, DiagKind::SyntaxError);
}

TEST(Dimacs, WarningsDoNotFailTheParse) {
  auto r = parse_dimacs("p cnf 3 5\n1 -1 2 0\n1 2 0\n2 1 0\n3");
  ASSERT_TRUE(r.ok());
  EXPECT_NE(find_kind(r, DiagKind::TautologyDropped), nullptr);
  EXPECT_NE(find_kind(r, DiagKind::DuplicateDropped), nullptr);
  EXPECT_NE(find_kind(r, DiagKind::UnterminatedClause), nullptr);
  EXPECT_NE(find_kind(r, DiagKind::HeaderMismatch), nullptr);
  EXPECT_EQ(r.formula->size(), 2u);
  EXPECT_EQ(r.formula->input_clause_count(), 4u);
}

TEST(Dimacs, EmptyClauseIsKept) {
  auto r = parse_dimacs("p cnf 1 2\n0\n1 0\n");
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.formula->has_empty_clause());
  EXPECT_EQ(write_dimacs(*r.formula), "p cnf 1 2\n0\n1 0\n");
}

TEST(Dimacs, WriteIsCanonical) {
  auto f = formula_from_dimacs(3, {{3, -1}, {2}});
  EXPECT_EQ(write_dimacs(f), "p cnf 3 2\n-1 3 0\n2 0\n");
}

TEST(Dimacs, ProductNotation) {
  auto f = formula_from_dimacs(3, {{1, 2, 3}, {-1}});
  EXPECT_EQ(format_product_notation(f), "(A+B+C).(!A)");
  auto g = formula_from_dimacs(30, {{1, -30}});
  EXPECT_EQ(format_product_notation(g), "(x1+!x30)");
}

TEST(Dimacs, RoundTripPreservesClauses) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    uint32_t n = 1 + static_cast<uint32_t>(rng() % 10);
    auto f = formula_from_dimacs(n, testsupport::random_raw(rng, n, rng() % 30));
    auto text = write_dimacs(f);
    auto r = parse_dimacs(text);
    ASSERT_TRUE(r.ok()) << text;
    EXPECT_TRUE(r.formula->same_clauses(f));
    EXPECT_EQ(write_dimacs(*r.formula), text);
    EXPECT_TRUE(r.diagnostics.empty());
  }
}

TEST(Dimacs, ArbitraryBytesNeverCrash) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "p cnf 0123456789-\n\t%c x";
  for (int t = 0; t < 20000; ++t) {
    std::string s;
    size_t len = rng() % 60;
    for (size_t i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    if (t % 2) s = "p cnf 5 3\n" + s;
    auto r = parse_dimacs(s);
    EXPECT_EQ(r.ok(), r.first_error() == nullptr);
  }
}

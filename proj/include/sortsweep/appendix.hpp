#pragma once

// Machine check of the appendix case analysis: every listed clause product,
// its claimed equality (when one is stated), what the reduction engine does
// with it, and the model counts of the final products.

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sortsweep/cnf.hpp"
#include "sortsweep/dimacs.hpp"
#include "sortsweep/expand.hpp"
#include "sortsweep/kv.hpp"
#include "sortsweep/oracle.hpp"
#include "sortsweep/reduce.hpp"

namespace sortsweep {

/// Small boolean expression tree for the sum-of-products sides of the
/// distribution identities, which are not CNF.
struct Expr {
  enum class Kind { Lit, And, Or, Not };
  Kind kind = Kind::Lit;
  Literal lit;
  std::vector<Expr> kids;

  static Expr literal(Literal l) { return {Kind::Lit, l, {}}; }
  static Expr all(std::vector<Expr> k) { return {Kind::And, {}, std::move(k)}; }
  static Expr any(std::vector<Expr> k) { return {Kind::Or, {}, std::move(k)}; }
  static Expr negation(Expr e) { return {Kind::Not, {}, {std::move(e)}}; }

  static Expr from_formula(const Formula& f) {
    std::vector<Expr> cs;
    for (const auto& c : f.clauses()) {
      std::vector<Expr> ls;
      for (auto l : c.literals()) ls.push_back(literal(l));
      cs.push_back(any(std::move(ls)));
    }
    if (f.has_empty_clause()) cs.push_back(any({}));
    return all(std::move(cs));
  }

  bool eval(const Assignment& a) const {
    switch (kind) {
      case Kind::Lit: return a.value(lit) == Truth::True;
      case Kind::And:
        for (const auto& k : kids)
          if (!k.eval(a)) return false;
        return true;
      case Kind::Or:
        for (const auto& k : kids)
          if (k.eval(a)) return true;
        return false;
      case Kind::Not: return !kids[0].eval(a);
    }
    return false;
  }

  void collect_vars(std::set<uint32_t>& out) const {
    if (kind == Kind::Lit) out.insert(lit.var().id);
    for (const auto& k : kids) k.collect_vars(out);
  }
};

/// Truth-table equivalence over the variables occurring in either side.
inline bool equivalent(const Expr& a, const Expr& b) {
  std::set<uint32_t> vs;
  a.collect_vars(vs);
  b.collect_vars(vs);
  if (vs.size() > 20) throw Error(Errc::TooLarge, "expression equivalence limited to 20 variables");
  std::vector<uint32_t> vars(vs.begin(), vs.end());
  uint32_t n = vars.empty() ? 0 : vars.back();
  for (uint64_t x = 0; x < (uint64_t{1} << vars.size()); ++x) {
    Assignment asg(n, Truth::False);
    for (size_t i = 0; i < vars.size(); ++i) asg.set(Var{vars[i]}, (x >> i) & 1);
    if (a.eval(asg) != b.eval(asg)) return false;
  }
  return true;
}

// Letter variables, numbered so that the A..Z notation prints them by name.
namespace letters {
inline constexpr uint32_t kAlphabet = 26;
inline constexpr Literal pos(char c) { return encode_literal(Var{static_cast<uint32_t>(c - 'A' + 1)}, false); }
inline constexpr Literal neg(char c) { return encode_literal(Var{static_cast<uint32_t>(c - 'A' + 1)}, true); }

/// Parses "(Q+W+E).(!Q+B)" into a formula over 26 letter variables.
inline Formula parse(std::string_view s) {
  std::vector<std::vector<Literal>> raw;
  std::vector<Literal>* cur = nullptr;
  bool negate = false;
  for (char c : s) {
    if (c == '(') cur = &raw.emplace_back();
    else if (c == '!') negate = true;
    else if (c >= 'A' && c <= 'Z') {
      cur->push_back(negate ? neg(c) : pos(c));
      negate = false;
    }
  }
  return Formula::build(kAlphabet, raw);
}
}  // namespace letters

enum class CaseClaim {
  RuleIdentity,         // a rewrite rule stated as an equality
  SpottedBySweep,       // "would have been spotted in the third sweep"
  SpottedAfterSorting,  // "would have been spotted after sorting"
  NoConstraint,         // "no actual constraining"
  RemainsItem,          // "remains in our analysis" / "reduces to item k"
  Satisfiable,          // "does not collapse to unsatisfiable"
};

inline const char* claim_name(CaseClaim c) {
  switch (c) {
    case CaseClaim::RuleIdentity: return "RuleIdentity";
    case CaseClaim::SpottedBySweep: return "SpottedBySweep";
    case CaseClaim::SpottedAfterSorting: return "SpottedAfterSorting";
    case CaseClaim::NoConstraint: return "NoConstraint";
    case CaseClaim::RemainsItem: return "RemainsItem";
    case CaseClaim::Satisfiable: return "Satisfiable";
  }
  return "?";
}

struct AppendixCase {
  std::string label;
  Formula lhs;
  std::optional<Formula> rhs;
  CaseClaim claim = CaseClaim::RemainsItem;
  int item = 0;                    // for RemainsItem
  bool expect_equivalent = true;   // false only for the documented non-equivalence
  std::string lhs_text, rhs_text;  // as written
};

struct CaseResult {
  std::string label;
  CaseClaim claim;
  int item = 0;
  std::string lhs_text, rhs_text;
  std::optional<bool> equivalent;  // when rhs present
  bool equivalence_ok = true;      // equivalent == expected (true when no rhs)
  bool expect_equivalent = true;
  bool engine_detected = false;    // with the requested rule set
  bool detected_without_r4 = false;
  bool detected_with_r4 = false;
  bool needs_r4 = false;
  bool tautology_dropped = false;
  bool matches_claim = false;
  uint64_t model_count = 0;  // over the variables occurring in lhs
  ReduceStatus status = ReduceStatus::Irreducible;
  uint32_t sweeps = 0;
  std::string reduced_text;
};

struct IdentityResult {
  std::string label;
  bool holds = false;
};

struct AppendixReport {
  bool enable_r4 = false;
  std::vector<CaseResult> cases;
  std::vector<IdentityResult> identities;

  size_t equalities_checked() const {
    size_t k = 0;
    for (const auto& c : cases) k += c.equivalent.has_value();
    return k + identities.size();
  }
  bool all_equalities_ok() const {
    for (const auto& c : cases)
      if (!c.equivalence_ok) return false;
    for (const auto& i : identities)
      if (!i.holds) return false;
    return true;
  }
  std::vector<const CaseResult*> discrepancies() const {
    std::vector<const CaseResult*> out;
    for (const auto& c : cases)
      if (!c.matches_claim) out.push_back(&c);
    return out;
  }
  const CaseResult* find(std::string_view label) const {
    for (const auto& c : cases)
      if (c.label == label) return &c;
    return nullptr;
  }
};

/// The case list, in appendix order.
inline std::vector<AppendixCase> appendix_cases() {
  std::vector<AppendixCase> cs;
  auto add = [&](std::string label, std::string lhs, std::string rhs, CaseClaim claim, int item = 0,
                 bool expect_eq = true) {
    AppendixCase c;
    c.label = std::move(label);
    c.lhs = letters::parse(lhs);
    if (!rhs.empty()) c.rhs = letters::parse(rhs);
    c.claim = claim;
    c.item = item;
    c.expect_equivalent = expect_eq;
    c.lhs_text = std::move(lhs);
    c.rhs_text = std::move(rhs);
    cs.push_back(std::move(c));
  };
  using P = CaseClaim;

  add("rule/complementary-merge", "(A+B+C).(A+B+!C)", "(A+B)", P::RuleIdentity);
  add("rule/unit-subsume", "(A+K+L).(K)", "(K)", P::RuleIdentity);
  add("rule/unit-resolve-as-written", "(A+K).(!K)", "(A)", P::RuleIdentity, 0, false);
  add("rule/unit-resolve-unit-kept", "(A+K).(!K)", "(A).(!K)", P::RuleIdentity);

  add("one negation/A=!Q", "(Q+W+E).(!Q)", "", P::SpottedBySweep);
  add("one negation/item 1", "(Q+W+E).(!Q+B)", "", P::RemainsItem, 1);
  add("one negation/item 2", "(Q+W+E).(!Q+B+C)", "", P::RemainsItem, 2);

  add("item 1/B=Q", "(Q+W+E).(!Q+Q)", "(Q+W+E)", P::NoConstraint);
  add("item 1/B=!Q", "(Q+W+E).(!Q+!Q)", "(Q+W+E).(!Q)", P::SpottedBySweep);
  add("item 1/B=W", "(Q+W+E).(!Q+W)", "", P::SpottedAfterSorting);
  add("item 1/B=E", "(Q+W+E).(!Q+E)", "", P::SpottedAfterSorting);
  add("item 1/B=!W", "(Q+W+E).(!Q+!W)", "", P::RemainsItem, 3);
  add("item 1/B=!E", "(Q+W+E).(!Q+!E)", "", P::RemainsItem, 3);
  add("item 2/B=Q", "(Q+W+E).(!Q+Q+C)", "(Q+W+E)", P::NoConstraint);
  add("item 2/B=!Q", "(Q+W+E).(!Q+!Q+C)", "(Q+W+E).(!Q+C)", P::RemainsItem, 1);
  add("item 2/B=C=W", "(Q+W+E).(!Q+W+W)", "(Q+W+E).(!Q+W)", P::SpottedAfterSorting);
  add("item 2/B=C=E", "(Q+W+E).(!Q+E+E)", "(Q+W+E).(!Q+E)", P::SpottedAfterSorting);
  add("item 2/B=C=!W", "(Q+W+E).(!Q+!W+!W)", "(Q+W+E).(!Q+!W)", P::RemainsItem, 3);
  add("item 2/B=C=!E", "(Q+W+E).(!Q+!E+!E)", "(Q+W+E).(!Q+!E)", P::RemainsItem, 3);
  add("item 2/B=W,C=!W", "(Q+W+E).(!Q+W+!W)", "(Q+W+E)", P::NoConstraint);
  add("item 2/B=E,C=!E", "(Q+W+E).(!Q+E+!E)", "(Q+W+E)", P::NoConstraint);
  add("item 2/B=W,C=E", "(Q+W+E).(!Q+W+E)", "", P::SpottedAfterSorting);
  add("item 2/B=W,C=!E", "(Q+W+E).(!Q+W+!E)", "", P::RemainsItem, 4);
  add("item 2/B=E,C=!W", "(Q+W+E).(!Q+E+!W)", "", P::RemainsItem, 4);

  add("iterated/item 3", "(Q+W+E).(!Q+!W)", "", P::Satisfiable);
  add("iterated/item 4", "(Q+W+E).(!Q+W+!E)", "", P::Satisfiable);
  add("iterated/item 3 all variants", "(Q+W+E).(!Q+!W).(!Q+!E).(!W+!E)", "", P::Satisfiable);
  add("iterated/item 4 all variants", "(Q+W+E).(!Q+W+!E).(!Q+E+!W).(Q+!E+!W)", "", P::Satisfiable);
  add("iterated/items 3+4 all variants", "(Q+W+E).(!Q+!W).(!Q+!E).(!W+!E).(!Q+W+!E).(!Q+E+!W).(Q+!E+!W)",
      "(Q+W+E).(!Q+!W).(!Q+!E).(!W+!E)", P::Satisfiable);
  return cs;
}

/// Sum-of-products identities and De Morgan.
inline std::vector<IdentityResult> check_distribution_identities() {
  using letters::neg;
  using letters::pos;
  auto L = [](Literal l) { return Expr::literal(l); };
  const Expr qwe = Expr::any({L(pos('Q')), L(pos('W')), L(pos('E'))});
  std::vector<IdentityResult> out;
  const std::vector<std::pair<std::string, Expr>> factors = {
      {"(A)", Expr::any({L(pos('A'))})},
      {"(A+B)", Expr::any({L(pos('A')), L(pos('B'))})},
      {"(A+B+C)", Expr::any({L(pos('A')), L(pos('B')), L(pos('C'))})},
  };
  for (const auto& [name, f] : factors) {
    Expr product = Expr::all({qwe, f});
    Expr expansion = Expr::any({Expr::all({L(pos('Q')), f}), Expr::all({L(pos('W')), f}),
                                Expr::all({L(pos('E')), f})});
    out.push_back({"(Q+W+E)." + name + " = Q." + name + " + W." + name + " + E." + name,
                   equivalent(product, expansion)});
  }
  out.push_back({"!(Q+W+E) = !Q.!W.!E",
                 equivalent(Expr::negation(qwe), Expr::all({L(neg('Q')), L(neg('W')), L(neg('E'))}))});
  return out;
}

namespace detail {
inline bool engine_fires(const Formula& f, bool r4) {
  auto [form, trace] = reduce_to_fixpoint(f, ReduceConfig{Backend::Sorted, r4});
  return trace.sweeps > 0 || form.status() == ReduceStatus::ContradictionFound;
}
}  // namespace detail

inline CaseResult run_case(const AppendixCase& c, bool enable_r4) {
  CaseResult r;
  r.label = c.label;
  r.claim = c.claim;
  r.item = c.item;
  r.lhs_text = c.lhs_text;
  r.rhs_text = c.rhs_text;
  r.expect_equivalent = c.expect_equivalent;
  if (c.rhs) {
    r.equivalent = equivalent(c.lhs, *c.rhs);
    r.equivalence_ok = *r.equivalent == c.expect_equivalent;
  }
  r.detected_without_r4 = detail::engine_fires(c.lhs, false);
  r.detected_with_r4 = detail::engine_fires(c.lhs, true);
  r.engine_detected = enable_r4 ? r.detected_with_r4 : r.detected_without_r4;
  r.needs_r4 = r.detected_with_r4 && !r.detected_without_r4;
  for (const auto& d : c.lhs.dropped()) r.tautology_dropped |= d.reason == DropReason::Tautology;

  auto [form, trace] = reduce_to_fixpoint(c.lhs, ReduceConfig{Backend::Sorted, enable_r4});
  r.status = form.status();
  r.sweeps = trace.sweeps;
  r.reduced_text = form.status() == ReduceStatus::ContradictionFound ? "()" : format_product_notation(form.formula());
  r.model_count = *truth_table_solve(compact_variables(c.lhs)).model_count;

  switch (c.claim) {
    case CaseClaim::RuleIdentity: r.matches_claim = r.equivalence_ok; break;
    case CaseClaim::SpottedBySweep:
    case CaseClaim::SpottedAfterSorting: r.matches_claim = r.engine_detected; break;
    case CaseClaim::NoConstraint:
      r.matches_claim = r.tautology_dropped && r.equivalence_ok && !r.engine_detected;
      break;
    case CaseClaim::RemainsItem:
      r.matches_claim = !r.engine_detected && r.equivalence_ok;
      break;
    case CaseClaim::Satisfiable: {
      bool found = form.status() == ReduceStatus::Irreducible &&
                   expand(form, 1).kind == SearchKind::FoundAssignments;
      r.matches_claim = r.model_count > 0 && found && r.equivalence_ok;
      break;
    }
  }
  return r;
}

/// Runs every case and identity. With `enable_r4` the engine also applies
/// self-subsuming resolution.
inline AppendixReport run_appendix_suite(bool enable_r4) {
  AppendixReport rep;
  rep.enable_r4 = enable_r4;
  for (const auto& c : appendix_cases()) rep.cases.push_back(run_case(c, enable_r4));
  rep.identities = check_distribution_identities();
  return rep;
}

inline std::string appendix_report_text(const AppendixReport& rep) {
  std::ostringstream os;
  os << "appendix verification (self-subsumption " << (rep.enable_r4 ? "on" : "off") << ")\n\n";
  for (const auto& c : rep.cases) {
    os << (c.matches_claim ? "  ok    " : "  DIFF  ") << c.label << "\n";
    os << "        " << c.lhs_text;
    if (!c.rhs_text.empty()) {
      os << (c.equivalent.value_or(false) ? " == " : " != ") << c.rhs_text;
      if (!c.expect_equivalent) os << "  (documented non-equivalence)";
    }
    os << "\n        claim " << claim_name(c.claim);
    if (c.claim == CaseClaim::RemainsItem) os << " " << c.item;
    os << "; engine " << (c.engine_detected ? "reduces" : "leaves unchanged") << " -> " << c.reduced_text
       << "; models " << c.model_count;
    if (c.needs_r4) os << "; needs self-subsumption";
    os << "\n";
  }
  os << "\nidentities\n";
  for (const auto& i : rep.identities) os << (i.holds ? "  ok    " : "  FAIL  ") << i.label << "\n";
  auto disc = rep.discrepancies();
  os << "\nequalities checked " << rep.equalities_checked() << ", all hold as expected: "
     << (rep.all_equalities_ok() ? "yes" : "no") << "\n";
  os << "claim discrepancies: " << disc.size() << "\n";
  for (const auto* d : disc) os << "  " << d->label << (d->needs_r4 ? " (detected with self-subsumption)" : "") << "\n";
  os << "cases needing self-subsumption:";
  for (const auto& c : rep.cases)
    if (c.needs_r4) os << " [" << c.label << "]";
  os << "\n";
  return os.str();
}

inline std::string appendix_report_kv(const AppendixReport& rep) {
  std::string out;
  for (const auto& c : rep.cases) {
    KvLine l("case");
    l.add("label", c.label).add("claim", claim_name(c.claim)).add("item", c.item).add("lhs", c.lhs_text);
    if (c.equivalent) l.add("rhs", c.rhs_text).add("equivalent", *c.equivalent).add("expected", c.expect_equivalent);
    l.add("equivalence_ok", c.equivalence_ok)
        .add("detected", c.engine_detected)
        .add("needs_r4", c.needs_r4)
        .add("matches_claim", c.matches_claim)
        .add("status", status_name(c.status))
        .add("models", c.model_count);
    out += l.str() + "\n";
  }
  for (const auto& i : rep.identities)
    out += KvLine("identity").add("label", i.label).add("holds", i.holds).str() + "\n";
  out += KvLine("summary")
             .add("r4", rep.enable_r4)
             .add("cases", rep.cases.size())
             .add("equalities", rep.equalities_checked())
             .add("equalities_ok", rep.all_equalities_ok())
             .add("discrepancies", rep.discrepancies().size())
             .str() +
         "\n";
  return out;
}

}  // namespace sortsweep

#pragma once

// Ground truth: exhaustive truth-table enumeration (64 assignments per word)
// and a plain unit-propagating backtracking solver.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "sortsweep/cnf.hpp"

namespace sortsweep {

inline constexpr uint32_t kTruthTableVars = 24;

enum class Verdict { Sat, Unsat };

inline const char* verdict_name(Verdict v) { return v == Verdict::Sat ? "SAT" : "UNSAT"; }

struct OracleResult {
  Verdict verdict = Verdict::Unsat;
  std::optional<uint64_t> model_count;
  std::optional<Assignment> witness;
};

namespace detail {

/// Evaluates clauses 64 assignments at a time. Assignment index x orders
/// variable 1 as the most significant bit, so increasing x is lexicographic
/// order with false < true. Bit position p of x holds variable n - p.
class BlockEvaluator {
 public:
  BlockEvaluator(uint32_t n, const std::vector<ClauseLits>& clauses, bool has_empty)
      : n_(n), has_empty_(has_empty) {
    for (const auto& c : clauses) {
      auto& lits = clauses_.emplace_back();
      for (auto l : c) lits.push_back({n - l.var().id, l.negated()});
    }
  }

  uint64_t blocks() const { return n_ <= 6 ? 1 : uint64_t{1} << (n_ - 6); }
  uint64_t block_mask() const { return n_ >= 6 ? ~uint64_t{0} : (uint64_t{1} << (uint64_t{1} << n_)) - 1; }

  /// Bit b set iff assignment (high << 6 | b) satisfies every clause.
  uint64_t eval(uint64_t high) const {
    static constexpr std::array<uint64_t, 6> kPattern = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    if (has_empty_) return 0;
    uint64_t m = block_mask();
    for (const auto& c : clauses_) {
      uint64_t cm = 0;
      for (auto [pos, neg] : c) {
        uint64_t pat = pos < 6 ? kPattern[pos] : (((high >> (pos - 6)) & 1) ? ~uint64_t{0} : 0);
        cm |= neg ? ~pat : pat;
      }
      m &= cm;
      if (!m) break;
    }
    return m;
  }

  Assignment decode(uint64_t x) const {
    Assignment a(n_);
    for (uint32_t v = 1; v <= n_; ++v) a.set(Var{v}, (x >> (n_ - v)) & 1);
    return a;
  }

 private:
  struct Lit {
    uint32_t pos;
    bool neg;
  };
  uint32_t n_;
  bool has_empty_;
  std::vector<std::vector<Lit>> clauses_;
};

inline std::vector<ClauseLits> lits_of(const Formula& f) {
  std::vector<ClauseLits> out;
  for (const auto& c : f.clauses()) out.push_back(c.lits());
  return out;
}

}  // namespace detail

/// Enumerates all 2^n assignments. With `count_models` false the scan stops
/// at the first (lexicographically smallest) model.
inline OracleResult truth_table_solve(const Formula& f, bool count_models = true) {
  if (f.num_vars() > kTruthTableVars) throw Error(Errc::TooLarge, "truth table limited to 24 variables");
  detail::BlockEvaluator ev(f.num_vars(), detail::lits_of(f), f.has_empty_clause());
  OracleResult r;
  uint64_t count = 0;
  for (uint64_t hi = 0; hi < ev.blocks(); ++hi) {
    uint64_t m = ev.eval(hi);
    if (!m) continue;
    if (!r.witness) r.witness = ev.decode((hi << 6) | static_cast<uint64_t>(std::countr_zero(m)));
    count += static_cast<uint64_t>(std::popcount(m));
    if (!count_models) break;
  }
  r.verdict = r.witness ? Verdict::Sat : Verdict::Unsat;
  if (count_models) r.model_count = count;
  return r;
}

/// Plain DPLL: repeated unit propagation over all clauses, then branch on the
/// first unassigned variable of an open clause, true first. No learning.
inline OracleResult backtracking_solve(const Formula& f) {
  OracleResult r;
  if (f.has_empty_clause()) return r;
  const uint32_t n = f.num_vars();
  std::vector<Truth> val(n + 1, Truth::Unset);
  std::vector<uint32_t> trail;

  auto lit_value = [&](Literal l) {
    Truth t = val[l.var().id];
    if (t == Truth::Unset || !l.negated()) return t;
    return t == Truth::True ? Truth::False : Truth::True;
  };
  auto set_lit = [&](Literal l) {
    val[l.var().id] = l.negated() ? Truth::False : Truth::True;
    trail.push_back(l.var().id);
  };
  auto undo_to = [&](size_t mark) {
    while (trail.size() > mark) {
      val[trail.back()] = Truth::Unset;
      trail.pop_back();
    }
  };
  // false on conflict
  auto propagate = [&]() {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : f.clauses()) {
        std::optional<Literal> open;
        int unassigned = 0;
        bool sat = false;
        for (auto l : c.literals()) {
          Truth t = lit_value(l);
          if (t == Truth::True) { sat = true; break; }
          if (t == Truth::Unset) { ++unassigned; open = l; }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          set_lit(*open);
          changed = true;
        }
      }
    }
    return true;
  };
  auto pick = [&]() -> uint32_t {
    for (const auto& c : f.clauses()) {
      bool sat = false;
      uint32_t cand = 0;
      for (auto l : c.literals()) {
        Truth t = lit_value(l);
        if (t == Truth::True) sat = true;
        else if (t == Truth::Unset && !cand) cand = l.var().id;
      }
      if (!sat && cand) return cand;
    }
    return 0;
  };

  struct Frame {
    size_t mark;
    uint32_t var;
    int tried;  // 0: none, 1: true tried, 2: both tried
  };
  std::vector<Frame> stack;
  bool ok = propagate();
  for (;;) {
    if (ok) {
      uint32_t v = pick();
      if (v == 0) break;  // every clause satisfied
      stack.push_back({trail.size(), v, 0});
    } else {
      while (!stack.empty() && stack.back().tried == 2) stack.pop_back();
      if (stack.empty()) return r;
    }
    Frame& fr = stack.back();
    undo_to(fr.mark);
    bool value = fr.tried == 0;
    ++fr.tried;
    set_lit(encode_literal(Var{fr.var}, !value));
    ok = propagate();
  }
  Assignment a(n);
  for (uint32_t v = 1; v <= n; ++v) a.set(Var{v}, val[v] == Truth::True);
  r.verdict = Verdict::Sat;
  r.witness = a;
  return r;
}

/// Variables occurring in any retained clause, ascending.
inline std::vector<uint32_t> occurring_variables(const Formula& f) {
  std::set<uint32_t> s;
  for (const auto& c : f.clauses())
    for (auto l : c.literals()) s.insert(l.var().id);
  return {s.begin(), s.end()};
}

/// Renumbers the variables listed in `vars` (ascending) to 1..k.
inline Formula rename_variables(const Formula& f, const std::vector<uint32_t>& vars) {
  std::vector<std::vector<Literal>> raw;
  for (const auto& c : f.clauses()) {
    auto& r = raw.emplace_back();
    for (auto l : c.literals()) {
      auto it = std::lower_bound(vars.begin(), vars.end(), l.var().id);
      if (it == vars.end() || *it != l.var().id) throw Error(Errc::VarOutOfRange, "variable not in renaming");
      r.push_back(encode_literal(Var{static_cast<uint32_t>(it - vars.begin() + 1)}, l.negated()));
    }
  }
  if (f.has_empty_clause()) raw.emplace_back();
  return Formula::build(static_cast<uint32_t>(vars.size()), raw);
}

/// Same formula over only the variables that occur in it.
inline Formula compact_variables(const Formula& f) { return rename_variables(f, occurring_variables(f)); }

/// Identical model sets over the union of occurring variables.
inline bool equivalent(const Formula& a, const Formula& b) {
  auto va = occurring_variables(a), vb = occurring_variables(b);
  std::vector<uint32_t> vars;
  std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(vars));
  if (vars.size() > kTruthTableVars) throw Error(Errc::TooLarge, "equivalence limited to 24 variables");
  auto ca = rename_variables(a, vars), cb = rename_variables(b, vars);
  const auto k = static_cast<uint32_t>(vars.size());
  detail::BlockEvaluator ea(k, detail::lits_of(ca), ca.has_empty_clause());
  detail::BlockEvaluator eb(k, detail::lits_of(cb), cb.has_empty_clause());
  for (uint64_t hi = 0; hi < ea.blocks(); ++hi)
    if (ea.eval(hi) != eb.eval(hi)) return false;
  return true;
}

}  // namespace sortsweep

#pragma once

// Expansion of an irreducible form: pick one literal per residual clause,
// re-routing (chronological backtracking) when every literal of a clause
// collides with choices already made.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sortsweep/cnf.hpp"
#include "sortsweep/reduce.hpp"

namespace sortsweep {

inline constexpr uint64_t kUnlimited = std::numeric_limits<uint64_t>::max();

struct Branch {
  std::vector<Literal> chosen;  // one per residual clause, ascending clause id
  Assignment partial;
};

enum class SearchKind { FoundAssignments, Exhausted, BudgetExceeded };

inline const char* search_kind_name(SearchKind k) {
  switch (k) {
    case SearchKind::FoundAssignments: return "found";
    case SearchKind::Exhausted: return "exhausted";
    case SearchKind::BudgetExceeded: return "budget";
  }
  return "?";
}

struct SearchOutcome {
  SearchKind kind = SearchKind::Exhausted;
  std::vector<Branch> branches;
  std::vector<Assignment> assignments;  // total; unconstrained variables false
  uint64_t branches_explored = 0;       // literal choices made
  uint64_t reroutes = 0;                // clauses met with every literal false
  bool budget_hit = false;
};

/// Depth-first over residual clauses in ascending id order, literals in
/// ascending index order. A clause already satisfied by the partial
/// assignment passes through with its first true literal as the choice.
/// Stops after `limit` branches or `budget` choices.
inline SearchOutcome expand(const IrreducibleForm& ir, uint64_t limit = kUnlimited,
                            uint64_t budget = kUnlimited) {
  if (ir.status() != ReduceStatus::Irreducible)
    throw Error(Errc::InvalidState, "expansion needs an irreducible form");
  if (limit == 0) throw Error(Errc::NotApplicable, "branch limit must be at least 1");
  const uint32_t n = ir.num_vars();
  const auto& res = ir.residual();
  SearchOutcome out;

  Assignment partial(n);
  for (auto u : ir.units()) {
    if (partial.value(u) == Truth::False) throw Error(Errc::InvalidState, "complementary units");
    partial.assign(u);
  }

  struct Frame {
    uint8_t next = 0;      // next literal position to try
    bool through = false;  // clause was already satisfied on entry
    Var assigned{0};       // variable set by the current choice, if any
  };
  std::vector<Frame> frames(res.size());
  std::vector<Literal> chosen(res.size());
  size_t depth = 0;
  bool entering = true;

  for (;;) {
    if (depth == res.size()) {
      out.branches.push_back({chosen, partial});
      out.assignments.push_back(partial.completed(false));
      if (out.branches.size() >= limit) break;
      if (depth == 0) break;
      --depth;
      entering = false;
      continue;
    }
    Frame& fr = frames[depth];
    const Clause& c = res[depth];
    if (entering) {
      fr = Frame{};
      for (auto l : c.literals())
        if (partial.value(l) == Truth::True) {
          fr.through = true;
          chosen[depth] = l;
          break;
        }
      if (fr.through) {
        ++depth;
        continue;
      }
      bool viable = false;
      for (auto l : c.literals()) viable = viable || partial.value(l) != Truth::False;
      if (!viable) ++out.reroutes;
    } else if (fr.assigned.id != 0) {
      partial.unset(fr.assigned);
      fr.assigned = Var{0};
    }

    bool advanced = false;
    if (!fr.through) {
      while (fr.next < c.width()) {
        Literal l = c.literals()[fr.next++];
        if (partial.value(l) != Truth::Unset) continue;
        if (out.branches_explored >= budget) {
          out.budget_hit = true;
          break;
        }
        ++out.branches_explored;
        partial.assign(l);
        fr.assigned = l.var();
        chosen[depth] = l;
        advanced = true;
        break;
      }
    }
    if (out.budget_hit) break;
    if (advanced) {
      ++depth;
      entering = true;
      continue;
    }
    if (depth == 0) break;
    --depth;
    entering = false;
  }

  if (!out.branches.empty())
    out.kind = SearchKind::FoundAssignments;
  else
    out.kind = out.budget_hit ? SearchKind::BudgetExceeded : SearchKind::Exhausted;
  return out;
}

inline constexpr uint32_t kBranchCountVars = 24;

/// Number of total assignments extending at least one branch of the full
/// expansion.
inline uint64_t count_branch_models(const IrreducibleForm& ir) {
  const uint32_t n = ir.num_vars();
  if (n > kBranchCountVars) throw Error(Errc::TooLarge, "too many variables to count branch models");
  if (ir.status() == ReduceStatus::ContradictionFound) return 0;
  auto out = expand(ir);
  std::vector<std::pair<uint32_t, uint32_t>> cubes;  // (mask, values), bit v-1 = variable v
  for (const auto& b : out.branches) {
    uint32_t mask = 0, val = 0;
    for (uint32_t v = 1; v <= n; ++v) {
      Truth t = b.partial.value(Var{v});
      if (t == Truth::Unset) continue;
      mask |= 1u << (v - 1);
      if (t == Truth::True) val |= 1u << (v - 1);
    }
    cubes.emplace_back(mask, val);
  }
  uint64_t count = 0;
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t x = 0; x < total; ++x)
    for (auto [mask, val] : cubes)
      if ((static_cast<uint32_t>(x) & mask) == val) {
        ++count;
        break;
      }
  return count;
}

/// "v 1 -2 3 0"
inline std::string format_value_line(const Assignment& a) {
  std::string s = "v";
  for (uint32_t v = 1; v <= a.num_vars(); ++v) {
    s += ' ';
    if (a.value(Var{v}) != Truth::True) s += '-';
    s += std::to_string(v);
  }
  return s + " 0";
}

}  // namespace sortsweep

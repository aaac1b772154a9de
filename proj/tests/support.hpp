#pragma once

// Test-side reference implementations. These work on plain DIMACS integers
// and std::set, sharing no code with the library, so agreement between the
// two is evidence rather than tautology.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "sortsweep/sortsweep.hpp"

namespace testsupport {

using RawClause = std::vector<int>;
using RawCnf = std::vector<RawClause>;

// bit v-1 of `bits` is the value of variable v
inline bool satisfies(const RawCnf& f, uint64_t bits) {
  for (const auto& c : f) {
    bool sat = false;
    for (int x : c) {
      bool v = (bits >> (std::abs(x) - 1)) & 1;
      if ((x > 0) == v) { sat = true; break; }
    }
    if (!sat) return false;
  }
  return true;
}

inline std::vector<uint64_t> models(const RawCnf& f, uint32_t n) {
  std::vector<uint64_t> out;
  for (uint64_t b = 0; b < (uint64_t{1} << n); ++b)
    if (satisfies(f, b)) out.push_back(b);
  return out;
}

inline RawCnf raw_of(const sortsweep::Formula& f) {
  RawCnf out;
  for (const auto& c : f.clauses()) {
    auto& r = out.emplace_back();
    for (auto l : c.literals()) r.push_back(static_cast<int>(l.dimacs()));
  }
  if (f.has_empty_clause()) out.emplace_back();
  return out;
}

inline RawCnf raw_of(const sortsweep::ClauseState& s) {
  RawCnf out;
  for (const auto& [id, lits] : s) {
    auto& r = out.emplace_back();
    for (auto l : lits) r.push_back(static_cast<int>(l.dimacs()));
  }
  return out;
}

inline uint64_t bits_of(const sortsweep::Assignment& a) {
  uint64_t b = 0;
  for (uint32_t v = 1; v <= a.num_vars(); ++v)
    if (a.value(sortsweep::Var{v}) == sortsweep::Truth::True) b |= uint64_t{1} << (v - 1);
  return b;
}

inline sortsweep::Assignment assignment_of(uint64_t bits, uint32_t n) {
  sortsweep::Assignment a(n);
  for (uint32_t v = 1; v <= n; ++v) a.set(sortsweep::Var{v}, (bits >> (v - 1)) & 1);
  return a;
}

/// Random clauses of width 1..max_width over n variables, possibly with
/// repeated or complementary literals.
inline RawCnf random_raw(std::mt19937_64& rng, uint32_t n, size_t m, int max_width = 3) {
  std::uniform_int_distribution<int> width(1, max_width);
  std::uniform_int_distribution<int> var(1, static_cast<int>(n));
  std::bernoulli_distribution neg(0.5);
  RawCnf f;
  for (size_t i = 0; i < m; ++i) {
    auto& c = f.emplace_back();
    for (int k = width(rng); k > 0; --k) c.push_back(neg(rng) ? -var(rng) : var(rng));
  }
  return f;
}

/// Like random_raw but every clause has distinct variables.
inline RawCnf random_clean(std::mt19937_64& rng, uint32_t n, size_t m, int max_width = 3) {
  std::uniform_int_distribution<int> width(1, std::min<int>(max_width, static_cast<int>(n)));
  std::bernoulli_distribution neg(0.5);
  RawCnf f;
  std::vector<int> vars(n);
  for (uint32_t i = 0; i < n; ++i) vars[i] = static_cast<int>(i + 1);
  for (size_t i = 0; i < m; ++i) {
    std::shuffle(vars.begin(), vars.end(), rng);
    auto& c = f.emplace_back();
    for (int k = width(rng), j = 0; j < k; ++j) c.push_back(neg(rng) ? -vars[j] : vars[j]);
  }
  return f;
}

// (kind, first id, second id, detail as DIMACS or 0)
using CandTuple = std::tuple<int, uint32_t, uint32_t, int>;

inline std::set<CandTuple> tuples(const std::vector<sortsweep::ReductionCandidate>& cs) {
  std::set<CandTuple> out;
  for (const auto& c : cs)
    out.insert({static_cast<int>(c.kind), c.sources[0], c.sources[1],
                c.detail ? static_cast<int>(c.detail->dimacs()) : 0});
  return out;
}

/// Candidate set straight from the rule definitions, one clause pair at a time.
inline std::set<CandTuple> reference_candidates(const sortsweep::Formula& f, bool self_subsumption) {
  using sortsweep::Rule;
  struct C {
    uint32_t id;
    std::set<int> lits;
  };
  std::vector<C> cs;
  for (const auto& c : f.clauses()) {
    C x{c.id(), {}};
    for (auto l : c.literals()) x.lits.insert(static_cast<int>(l.dimacs()));
    cs.push_back(x);
  }
  auto subset = [](const std::set<int>& a, const std::set<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  std::set<CandTuple> out;
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i + 1; j < cs.size(); ++j) {
      const C& lo = cs[i].id < cs[j].id ? cs[i] : cs[j];
      const C& hi = cs[i].id < cs[j].id ? cs[j] : cs[i];
      if (lo.lits.size() == hi.lits.size()) {
        std::vector<int> a_only, b_only;
        std::set_difference(lo.lits.begin(), lo.lits.end(), hi.lits.begin(), hi.lits.end(),
                            std::back_inserter(a_only));
        std::set_difference(hi.lits.begin(), hi.lits.end(), lo.lits.begin(), lo.lits.end(),
                            std::back_inserter(b_only));
        if (a_only.size() == 1 && b_only.size() == 1 && a_only[0] == -b_only[0]) {
          int kind = lo.lits.size() == 1 ? int(Rule::UnitResolve) : int(Rule::R1Merge);
          out.insert({kind, lo.id, hi.id, a_only[0]});
        }
        continue;
      }
      const C& s = lo.lits.size() < hi.lits.size() ? lo : hi;
      const C& g = &s == &lo ? hi : lo;
      if (subset(s.lits, g.lits)) {
        out.insert({int(Rule::Subsume), s.id, g.id, 0});
      } else if (s.lits.size() == 1) {
        int u = *s.lits.begin();
        if (g.lits.count(-u)) out.insert({int(Rule::UnitResolve), s.id, g.id, u});
      } else if (self_subsumption && s.lits.size() == 2) {
        for (int x : s.lits) {
          std::set<int> rest = s.lits;
          rest.erase(x);
          rest.insert(-x);
          if (subset(rest, g.lits)) out.insert({int(Rule::SelfSubsume), s.id, g.id, -x});
        }
      }
    }
  return out;
}

}  // namespace testsupport

#pragma once

// Candidate discovery by permutation sorting. Every clause is expanded into
// all orderings of its literals, the records are sorted, and reducible
// clause pairs are read off neighbouring runs of the sorted sequence.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "sortsweep/cnf.hpp"

namespace sortsweep {

/// Rewrite rules. The first four are discovered by the scan and their order
/// is the application priority within a sweep.
enum class Rule : uint8_t {
  Subsume,
  UnitResolve,
  R1Merge,
  SelfSubsume,
  Dedup,
  TautologyDrop,
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Subsume: return "subsume";
    case Rule::UnitResolve: return "unit-resolve";
    case Rule::R1Merge: return "r1-merge";
    case Rule::SelfSubsume: return "self-subsume";
    case Rule::Dedup: return "dedup";
    case Rule::TautologyDrop: return "tautology-drop";
  }
  return "?";
}

inline constexpr uint32_t kSentinel = std::numeric_limits<uint32_t>::max();

struct PermRecord {
  std::array<uint32_t, 3> key{kSentinel, kSentinel, kSentinel};
  ClauseId source = 0;
  uint8_t width = 0;

  friend bool operator==(const PermRecord&, const PermRecord&) = default;
};

/// One record per ordering: 6 for width 3, 2 for width 2, 1 for a unit.
inline std::vector<PermRecord> expand_permutations(std::span<const Clause> clauses) {
  std::vector<PermRecord> out;
  size_t total = 0;
  for (const auto& c : clauses) total += c.width() == 3 ? 6 : c.width();
  out.reserve(total);
  for (const auto& c : clauses) {
    std::array<uint32_t, 3> lits{};
    for (size_t i = 0; i < c.width(); ++i) lits[i] = c.literals()[i].index();
    // literals are ascending, so next_permutation visits every ordering once
    do {
      PermRecord r;
      std::copy_n(lits.begin(), c.width(), r.key.begin());
      r.source = c.id();
      r.width = static_cast<uint8_t>(c.width());
      out.push_back(r);
    } while (std::next_permutation(lits.begin(), lits.begin() + c.width()));
  }
  return out;
}

inline std::vector<PermRecord> expand_permutations(const Formula& f) {
  return expand_permutations(std::span<const Clause>(f.clauses()));
}

struct SortStats {
  uint64_t record_count = 0;
  uint64_t comparisons = 0;
};

/// Upper bound on merge-sort comparisons checked by the instrumentation:
/// 2 R log2 R + R.
inline double comparison_bound(uint64_t records) {
  if (records == 0) return 0.0;
  double r = static_cast<double>(records);
  return 2.0 * r * std::log2(r) + r;
}

struct SortedRecords {
  std::vector<PermRecord> records;
  SortStats stats;
};

/// Bottom-up merge sort by (key, source) with an exact comparison count.
inline SortedRecords sort_records(std::vector<PermRecord> rs) {
  SortStats stats{rs.size(), 0};
  auto less = [&stats](const PermRecord& a, const PermRecord& b) {
    ++stats.comparisons;
    if (a.key != b.key) return a.key < b.key;
    return a.source < b.source;
  };
  std::vector<PermRecord> buf(rs.size());
  const size_t n = rs.size();
  for (size_t width = 1; width < n; width *= 2) {
    for (size_t lo = 0; lo < n; lo += 2 * width) {
      size_t mid = std::min(lo + width, n);
      size_t hi = std::min(lo + 2 * width, n);
      size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) buf[k++] = less(rs[j], rs[i]) ? rs[j++] : rs[i++];
      while (i < mid) buf[k++] = rs[i++];
      while (j < hi) buf[k++] = rs[j++];
    }
    rs.swap(buf);
  }
  return {std::move(rs), stats};
}

/// A reducible clause pair.
///
/// Source order and `detail` are canonical so that candidate lists from
/// different discovery routes compare equal:
///   Subsume      {shorter, longer}, no detail
///   UnitResolve  {unit, target}, detail = the unit literal; for two
///                complementary units the lower id is the unit
///   R1Merge      {lower id, higher id}, detail = pivot literal of sources[0]
///   SelfSubsume  {2-clause, 3-clause}, detail = literal removed from the 3-clause
struct ReductionCandidate {
  Rule kind = Rule::Subsume;
  std::array<ClauseId, 2> sources{};
  std::optional<Literal> detail;

  friend bool operator==(const ReductionCandidate&, const ReductionCandidate&) = default;
  friend bool operator<(const ReductionCandidate& a, const ReductionCandidate& b) {
    auto da = a.detail ? a.detail->index() : 0u;
    auto db = b.detail ? b.detail->index() : 0u;
    return std::tie(a.kind, a.sources, da) < std::tie(b.kind, b.sources, db);
  }
};

struct ScanOptions {
  // Mixed-width resolution (x+S)(!x+S+T) -> (x+S)(S+T); off unless requested.
  bool self_subsumption = false;
};

/// Sorts and deduplicates by (kind, source set).
inline void canonicalize(std::vector<ReductionCandidate>& cs) {
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end(),
                       [](const ReductionCandidate& a, const ReductionCandidate& b) {
                         return a.kind == b.kind && a.sources == b.sources;
                       }),
           cs.end());
}

namespace detail {

inline bool same_prefix(const PermRecord& a, const PermRecord& b, size_t len) {
  return std::equal(a.key.begin(), a.key.begin() + len, b.key.begin());
}

inline ReductionCandidate unit_resolve(const PermRecord& unit, const PermRecord& target) {
  ReductionCandidate c{Rule::UnitResolve, {unit.source, target.source}, Literal(unit.key[0])};
  if (target.width == 1 && target.source < unit.source)
    c = {Rule::UnitResolve, {target.source, unit.source}, Literal(target.key[0])};
  return c;
}

}  // namespace detail

/// Reads candidates off a sorted record sequence. With the sentinel sorting
/// last, a record of width w closes the run of records sharing its w-literal
/// prefix, and the run for the complementary final literal (index +/- 1)
/// sits immediately beside that run. Each rule is found by walking one of
/// these neighbouring runs:
///   subsume      walk back through r's own prefix run (longer extensions)
///   R1 / self    walk the sibling run (prefix, complement of last literal)
///   unit-resolve walk the run led by the complement of the unit
inline std::vector<ReductionCandidate> scan_adjacent(std::span<const PermRecord> s,
                                                     ScanOptions opts = {}) {
  std::vector<ReductionCandidate> out;
  const size_t n = s.size();
  for (size_t i = 0; i < n; ++i) {
    const PermRecord& r = s[i];
    const size_t w = r.width;

    if (w < 3) {
      for (size_t j = i; j-- > 0 && detail::same_prefix(s[j], r, w);)
        if (s[j].width > w) out.push_back({Rule::Subsume, {r.source, s[j].source}, std::nullopt});
    }

    if (w == 1) {
      const uint32_t u = r.key[0];
      if (u % 2 == 1) {
        for (size_t j = i + 1; j < n && s[j].key[0] == u + 1; ++j)
          out.push_back(detail::unit_resolve(r, s[j]));
      } else {
        size_t j = i;
        while (j > 0 && s[j - 1].key[0] == u) --j;
        for (; j > 0 && s[j - 1].key[0] == u - 1; --j) out.push_back(detail::unit_resolve(r, s[j - 1]));
      }
      continue;
    }

    // w >= 2: sibling run shares the first w-1 literals and ends in the
    // complement of r's last literal.
    const uint32_t x = r.key[w - 1];
    const uint32_t nx = complement(Literal(x)).index();
    auto visit_sibling = [&](const PermRecord& o) {
      if (o.width == w) {
        // each R1 pair is reported from its odd-pivot side
        if (x % 2 == 1) {
          ReductionCandidate c{Rule::R1Merge, {r.source, o.source}, Literal(x)};
          if (o.source < r.source) c = {Rule::R1Merge, {o.source, r.source}, Literal(nx)};
          out.push_back(c);
        }
      } else if (w == 2 && o.width == 3 && opts.self_subsumption) {
        out.push_back({Rule::SelfSubsume, {r.source, o.source}, Literal(nx)});
      }
    };
    auto in_sibling = [&](const PermRecord& o) {
      return detail::same_prefix(o, r, w - 1) && o.key[w - 1] == nx;
    };
    if (x % 2 == 1) {
      for (size_t j = i + 1; j < n && in_sibling(s[j]); ++j) visit_sibling(s[j]);
    } else {
      size_t j = i;
      while (j > 0 && detail::same_prefix(s[j - 1], r, w)) --j;
      for (; j > 0 && in_sibling(s[j - 1]); --j) visit_sibling(s[j - 1]);
    }
  }
  canonicalize(out);
  return out;
}

/// Tests one unordered clause pair for every rule pattern.
inline void match_pair(const Clause& a, const Clause& b, ScanOptions opts,
                       std::vector<ReductionCandidate>& out) {
  const Clause* lo = a.id() < b.id() ? &a : &b;
  const Clause* hi = lo == &a ? &b : &a;
  const auto& L = lo->lits();
  const auto& H = hi->lits();

  if (L.width() == H.width()) {
    if (L.width() == 1) {
      if (complement(L[0]) == H[0]) out.push_back({Rule::UnitResolve, {lo->id(), hi->id()}, L[0]});
      return;
    }
    std::optional<Literal> only_l, only_h;
    int diff = 0;
    for (auto l : L)
      if (!H.contains(l)) { only_l = l; ++diff; }
    for (auto h : H)
      if (!L.contains(h)) only_h = h;
    if (diff == 1 && complement(*only_l) == *only_h)
      out.push_back({Rule::R1Merge, {lo->id(), hi->id()}, *only_l});
    return;
  }

  const Clause* sh = L.width() < H.width() ? lo : hi;
  const Clause* lg = sh == lo ? hi : lo;
  const auto& S = sh->lits();
  const auto& G = lg->lits();
  if (S.subset_of(G)) {
    out.push_back({Rule::Subsume, {sh->id(), lg->id()}, std::nullopt});
    return;
  }
  if (S.width() == 1) {
    if (G.contains(complement(S[0]))) out.push_back({Rule::UnitResolve, {sh->id(), lg->id()}, S[0]});
    return;
  }
  if (opts.self_subsumption && S.width() == 2) {
    for (size_t p = 0; p < 2; ++p) {
      Literal pivot = S[p], rest = S[1 - p];
      if (G.contains(complement(pivot)) && G.contains(rest))
        out.push_back({Rule::SelfSubsume, {sh->id(), lg->id()}, complement(pivot)});
    }
  }
}

/// Naive discovery: every one of the m(m-1)/2 clause pairs is tested.
inline std::vector<ReductionCandidate> pairwise_candidates(std::span<const Clause> clauses,
                                                           ScanOptions opts = {},
                                                           uint64_t* pair_tests = nullptr) {
  std::vector<ReductionCandidate> out;
  uint64_t tests = 0;
  for (size_t i = 0; i < clauses.size(); ++i)
    for (size_t j = i + 1; j < clauses.size(); ++j) {
      ++tests;
      match_pair(clauses[i], clauses[j], opts, out);
    }
  if (pair_tests) *pair_tests = tests;
  canonicalize(out);
  return out;
}

}  // namespace sortsweep

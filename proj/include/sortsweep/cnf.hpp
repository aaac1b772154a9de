#pragma once

// Core value types: literals in the odd/even integer encoding, width-bounded
// clauses, formulas with stable clause ids, and assignments.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sortsweep {

enum class Errc {
  WidthExceeded,
  VarOutOfRange,
  IncompleteAssignment,
  NotMergeable,
  NotSubsumed,
  NotApplicable,
  InvalidState,
  TooLarge,
  TooFewVariables,
  Unsupported,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::WidthExceeded: return "WidthExceeded";
    case Errc::VarOutOfRange: return "VarOutOfRange";
    case Errc::IncompleteAssignment: return "IncompleteAssignment";
    case Errc::NotMergeable: return "NotMergeable";
    case Errc::NotSubsumed: return "NotSubsumed";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::InvalidState: return "InvalidState";
    case Errc::TooLarge: return "TooLarge";
    case Errc::TooFewVariables: return "TooFewVariables";
    case Errc::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}
  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

// Largest variable number the encoding supports (2v must fit in 32 bits).
inline constexpr uint32_t kMaxVar = 1u << 30;

struct Var {
  uint32_t id = 0;
  friend constexpr auto operator<=>(Var, Var) = default;
};

/// Literal of variable v: positive is 2v-1, negated is 2v. Complementary
/// literals therefore occupy adjacent integers, which is what makes them
/// neighbours after sorting.
class Literal {
 public:
  constexpr Literal() = default;
  constexpr explicit Literal(uint32_t index) : index_(index) {}

  constexpr uint32_t index() const { return index_; }
  constexpr Var var() const { return Var{(index_ + 1) / 2}; }
  constexpr bool negated() const { return index_ % 2 == 0; }
  constexpr bool valid() const { return index_ >= 1; }

  /// DIMACS integer: +v or -v.
  constexpr int64_t dimacs() const {
    return negated() ? -static_cast<int64_t>(var().id) : static_cast<int64_t>(var().id);
  }

  friend constexpr auto operator<=>(Literal, Literal) = default;

 private:
  uint32_t index_ = 0;
};

constexpr Literal encode_literal(Var v, bool negated) {
  return Literal(negated ? 2 * v.id : 2 * v.id - 1);
}

constexpr Literal complement(Literal l) {
  return Literal(l.index() % 2 == 1 ? l.index() + 1 : l.index() - 1);
}

constexpr Literal from_dimacs(int64_t x) {
  return x > 0 ? encode_literal(Var{static_cast<uint32_t>(x)}, false)
               : encode_literal(Var{static_cast<uint32_t>(-x)}, true);
}

/// Sorted, duplicate-free literal list of width 0..3. Width 0 stands for the
/// empty clause. Complementary pairs are allowed here (tautologies have to be
/// representable while being filtered); `Clause` forbids them.
class ClauseLits {
 public:
  static constexpr size_t kMaxWidth = 3;

  constexpr ClauseLits() = default;

  /// Builds from literals that are already sorted and distinct.
  static ClauseLits from_sorted(std::span<const Literal> lits) {
    ClauseLits c;
    c.width_ = static_cast<uint8_t>(lits.size());
    std::copy(lits.begin(), lits.end(), c.lits_.begin());
    return c;
  }
  static ClauseLits of(std::initializer_list<uint32_t> indices) {
    std::vector<Literal> v;
    for (auto i : indices) v.emplace_back(i);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return from_sorted(v);
  }

  size_t width() const { return width_; }
  bool empty() const { return width_ == 0; }
  std::span<const Literal> literals() const { return {lits_.data(), width_}; }
  Literal operator[](size_t i) const { return lits_[i]; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.begin() + width_; }

  bool contains(Literal l) const { return std::find(begin(), end(), l) != end(); }

  bool tautological() const {
    for (size_t i = 0; i + 1 < width_; ++i)
      if (lits_[i].var() == lits_[i + 1].var()) return true;
    return false;
  }

  /// Copy with `l` removed (no-op when absent).
  ClauseLits without(Literal l) const {
    ClauseLits c;
    for (auto x : literals())
      if (x != l) c.lits_[c.width_++] = x;
    return c;
  }

  bool subset_of(const ClauseLits& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  friend bool operator==(const ClauseLits& a, const ClauseLits& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }
  friend auto operator<=>(const ClauseLits& a, const ClauseLits& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::array<Literal, kMaxWidth> lits_{};
  uint8_t width_ = 0;
};

struct ClauseLitsHash {
  size_t operator()(const ClauseLits& c) const noexcept {
    uint64_t h = c.width();
    for (auto l : c) h = h * 0x9E3779B97F4A7C15ull + l.index();
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

using ClauseId = uint32_t;

/// A normalized clause (width 1..3, strictly ascending, no complementary
/// pair) carrying its stable id.
class Clause {
 public:
  Clause(ClauseId id, ClauseLits lits) : id_(id), lits_(lits) {
    if (lits.empty() || lits.tautological())
      throw Error(Errc::InvalidState, "clause must be non-empty and tautology-free");
  }

  ClauseId id() const { return id_; }
  const ClauseLits& lits() const { return lits_; }
  size_t width() const { return lits_.width(); }
  std::span<const Literal> literals() const { return lits_.literals(); }
  bool contains(Literal l) const { return lits_.contains(l); }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  ClauseId id_;
  ClauseLits lits_;
};

enum class NormalKind { Clause, Tautology, Empty };

struct Normalized {
  NormalKind kind;
  ClauseLits lits;  // meaningful for Clause and Tautology
};

/// Sorts and deduplicates `raw`. Width is checked after deduplication, before
/// the tautology test, so (1 2 3 4) is rejected even though it is a tautology.
inline Normalized normalize_clause(std::span<const Literal> raw) {
  if (raw.empty()) return {NormalKind::Empty, {}};
  std::vector<Literal> v(raw.begin(), raw.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.size() > ClauseLits::kMaxWidth)
    throw Error(Errc::WidthExceeded, "clause has " + std::to_string(v.size()) + " distinct literals");
  auto lits = ClauseLits::from_sorted(v);
  return {lits.tautological() ? NormalKind::Tautology : NormalKind::Clause, lits};
}

enum class DropReason { Tautology, Duplicate };

/// An input clause removed during formula construction. Ids are consumed so
/// traces can refer to it.
struct DroppedClause {
  ClauseId id;
  ClauseLits lits;
  DropReason reason;
  ClauseId duplicate_of = 0;  // for Duplicate: the retained clause
};

class FormulaBuilder;

/// Set of clauses over variables 1..n. Immutable once built.
class Formula {
 public:
  Formula() = default;

  /// Builds from raw literal lists in input order. Throws WidthExceeded or
  /// VarOutOfRange.
  static Formula build(uint32_t n, const std::vector<std::vector<Literal>>& raw);

  /// Wraps clauses that are already normalized and carry ids (e.g. rewrite
  /// products). Clauses are kept in ascending id order.
  static Formula from_clauses(uint32_t n, std::vector<Clause> clauses, ClauseId next_id,
                              bool has_empty_clause = false) {
    Formula f;
    f.n_ = n;
    std::sort(clauses.begin(), clauses.end(),
              [](const Clause& a, const Clause& b) { return a.id() < b.id(); });
    std::unordered_set<ClauseLits, ClauseLitsHash> seen;
    for (const auto& c : clauses) {
      for (auto l : c.literals())
        if (l.var().id > n) throw Error(Errc::VarOutOfRange, "literal variable exceeds n");
      if (!seen.insert(c.lits()).second)
        throw Error(Errc::InvalidState, "duplicate clause in from_clauses");
      next_id = std::max(next_id, c.id() + 1);
    }
    f.clauses_ = std::move(clauses);
    f.next_id_ = next_id;
    f.input_count_ = f.clauses_.size();
    f.has_empty_ = has_empty_clause;
    return f;
  }

  uint32_t num_vars() const { return n_; }
  size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty() && !has_empty_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  /// Input contained a zero-width clause; the formula is UNSAT as given.
  bool has_empty_clause() const { return has_empty_; }
  const std::vector<DroppedClause>& dropped() const { return dropped_; }
  /// Clause count as supplied to the builder, before dropping.
  size_t input_clause_count() const { return input_count_; }
  ClauseId next_id() const { return next_id_; }

  size_t literal_instances() const {
    size_t s = 0;
    for (const auto& c : clauses_) s += c.width();
    return s;
  }

  const Clause* find(ClauseId id) const {
    auto it = std::lower_bound(clauses_.begin(), clauses_.end(), id,
                               [](const Clause& c, ClauseId i) { return c.id() < i; });
    return it != clauses_.end() && it->id() == id ? &*it : nullptr;
  }

  /// Clause-set and variable-count equality; ids are ignored.
  bool same_clauses(const Formula& o) const {
    if (n_ != o.n_ || has_empty_ != o.has_empty_ || clauses_.size() != o.clauses_.size())
      return false;
    std::vector<ClauseLits> a, b;
    for (const auto& c : clauses_) a.push_back(c.lits());
    for (const auto& c : o.clauses_) b.push_back(c.lits());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.n_ == b.n_ && a.has_empty_ == b.has_empty_ && a.clauses_ == b.clauses_;
  }

 private:
  friend class FormulaBuilder;

  uint32_t n_ = 0;
  std::vector<Clause> clauses_;
  std::vector<DroppedClause> dropped_;
  ClauseId next_id_ = 1;
  size_t input_count_ = 0;
  bool has_empty_ = false;
};

/// Incremental construction used by the DIMACS reader, which needs
/// per-clause error attribution.
class FormulaBuilder {
 public:
  enum class Added { Clause, Tautology, Duplicate, Empty };

  explicit FormulaBuilder(uint32_t n) { f_.n_ = n; }

  Added add(std::span<const Literal> raw) {
    for (auto l : raw) {
      if (!l.valid()) throw Error(Errc::VarOutOfRange, "literal index 0");
      if (l.var().id > f_.n_)
        throw Error(Errc::VarOutOfRange, "variable " + std::to_string(l.var().id) +
                                             " exceeds declared " + std::to_string(f_.n_));
    }
    auto norm = normalize_clause(raw);
    ClauseId id = f_.next_id_++;
    ++f_.input_count_;
    switch (norm.kind) {
      case NormalKind::Empty:
        f_.has_empty_ = true;
        return Added::Empty;
      case NormalKind::Tautology:
        f_.dropped_.push_back({id, norm.lits, DropReason::Tautology, 0});
        return Added::Tautology;
      case NormalKind::Clause: break;
    }
    auto [it, inserted] = index_.try_emplace(norm.lits, id);
    if (!inserted) {
      f_.dropped_.push_back({id, norm.lits, DropReason::Duplicate, it->second});
      return Added::Duplicate;
    }
    f_.clauses_.emplace_back(id, norm.lits);
    return Added::Clause;
  }

  Formula finish() && { return std::move(f_); }

 private:
  Formula f_;
  std::unordered_map<ClauseLits, ClauseId, ClauseLitsHash> index_;
};

inline Formula Formula::build(uint32_t n, const std::vector<std::vector<Literal>>& raw) {
  FormulaBuilder b(n);
  for (const auto& c : raw) b.add(c);
  return std::move(b).finish();
}

/// Convenience for tests and fixtures: clauses given as DIMACS integers.
inline Formula formula_from_dimacs(uint32_t n, const std::vector<std::vector<int>>& clauses) {
  std::vector<std::vector<Literal>> raw;
  for (const auto& c : clauses) {
    auto& r = raw.emplace_back();
    for (int x : c) r.push_back(from_dimacs(x));
  }
  return Formula::build(n, raw);
}

enum class Truth : uint8_t { Unset, False, True };

/// Per-variable tri-state values over 1..n.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(uint32_t n, Truth init = Truth::Unset) : values_(n + 1, init) {}

  static Assignment all(uint32_t n, bool v) { return Assignment(n, v ? Truth::True : Truth::False); }

  uint32_t num_vars() const { return values_.empty() ? 0 : static_cast<uint32_t>(values_.size() - 1); }

  Truth value(Var v) const { return values_.at(v.id); }
  void set(Var v, bool b) { values_.at(v.id) = b ? Truth::True : Truth::False; }
  void unset(Var v) { values_.at(v.id) = Truth::Unset; }

  /// Makes `l` true.
  void assign(Literal l) { set(l.var(), !l.negated()); }

  Truth value(Literal l) const {
    Truth t = value(l.var());
    if (t == Truth::Unset || !l.negated()) return t;
    return t == Truth::True ? Truth::False : Truth::True;
  }

  bool is_total() const {
    return std::none_of(values_.begin() + (values_.empty() ? 0 : 1), values_.end(),
                        [](Truth t) { return t == Truth::Unset; });
  }

  /// Unset variables become `v`.
  Assignment completed(bool v = false) const {
    Assignment a = *this;
    for (size_t i = 1; i < a.values_.size(); ++i)
      if (a.values_[i] == Truth::Unset) a.values_[i] = v ? Truth::True : Truth::False;
    return a;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Truth> values_;
};

/// True iff every clause has a true literal. Throws IncompleteAssignment
/// unless `a` is total over the formula's variables.
inline bool evaluate(const Formula& f, const Assignment& a) {
  if (a.num_vars() < f.num_vars())
    throw Error(Errc::IncompleteAssignment, "assignment covers fewer variables than the formula");
  for (uint32_t v = 1; v <= f.num_vars(); ++v)
    if (a.value(Var{v}) == Truth::Unset)
      throw Error(Errc::IncompleteAssignment, "variable " + std::to_string(v) + " unassigned");
  if (f.has_empty_clause()) return false;
  for (const auto& c : f.clauses()) {
    bool sat = std::any_of(c.literals().begin(), c.literals().end(),
                           [&](Literal l) { return a.value(l) == Truth::True; });
    if (!sat) return false;
  }
  return true;
}

}  // namespace sortsweep

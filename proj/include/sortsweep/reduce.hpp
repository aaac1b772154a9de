#pragma once

// Sweep-based reduction to an irreducible form. Each sweep discovers all
// candidates on the current formula, applies them in priority order, and
// records every rewrite so the run can be replayed and checked.

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "sortsweep/cnf.hpp"
#include "sortsweep/dimacs.hpp"
#include "sortsweep/permute_sort.hpp"

namespace sortsweep {

// --- single rewrites -------------------------------------------------------

/// (P+x)(P+!x) = (P). Parents must have equal width and differ in exactly
/// one complementary position. Unit parents give the empty clause.
inline ClauseLits apply_r1_merge(const ClauseLits& a, const ClauseLits& b) {
  if (a.width() != b.width() || a.empty())
    throw Error(Errc::NotMergeable, "clauses differ in width");
  std::optional<Literal> pa, pb;
  int diff = 0;
  for (auto l : a)
    if (!b.contains(l)) { pa = l; ++diff; }
  for (auto l : b)
    if (!a.contains(l)) pb = l;
  if (diff != 1 || complement(*pa) != *pb)
    throw Error(Errc::NotMergeable, "clauses do not differ in exactly one complementary literal");
  return a.without(*pa);
}

/// Checks that `shorter` subsumes `longer`; the longer clause is the one removed.
inline void check_subsumption(const ClauseLits& shorter, const ClauseLits& longer) {
  if (shorter == longer || !shorter.subset_of(longer))
    throw Error(Errc::NotSubsumed, "first clause is not a strict subset of the second");
}

/// (!u + R).(u) -> (R).(u): removes complement(u) from `c`. The unit itself
/// stays in the formula; only this keeps the rewrite an equivalence.
inline ClauseLits apply_unit_resolution(Literal u, const ClauseLits& c) {
  if (!c.contains(complement(u))) throw Error(Errc::NotApplicable, "clause lacks the unit's complement");
  return c.without(complement(u));
}

/// (x+S).(!x+S+T) -> (x+S).(S+T). Returns the shrunken longer clause.
inline ClauseLits apply_self_subsumption(const ClauseLits& shorter, const ClauseLits& longer) {
  if (shorter.width() >= longer.width()) throw Error(Errc::NotApplicable, "first clause is not shorter");
  for (auto pivot : shorter) {
    if (!longer.contains(complement(pivot))) continue;
    auto rest = shorter.without(pivot);
    if (rest.subset_of(longer)) return longer.without(complement(pivot));
  }
  throw Error(Errc::NotApplicable, "no self-subsuming pivot");
}

// --- trace types -----------------------------------------------------------

enum class OutputKind { Clause, Empty, Removed };

struct RewriteStep {
  Rule rule = Rule::Subsume;
  uint32_t sweep = 0;  // 0 for construction-time drops
  std::vector<ClauseId> inputs;
  OutputKind output = OutputKind::Removed;
  ClauseId output_id = 0;  // new clause id (Clause) or removed id (Removed)
  ClauseLits output_lits;  // for Clause

  /// Clause ids that no longer exist after the step.
  std::vector<ClauseId> removed_ids() const {
    switch (rule) {
      case Rule::R1Merge: return inputs;
      case Rule::UnitResolve:
      case Rule::SelfSubsume:
      case Rule::Subsume:
      case Rule::Dedup: return {inputs.at(1)};
      case Rule::TautologyDrop: return {inputs.at(0)};
    }
    return {};
  }

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

enum class Backend { Sorted, Pairwise };

inline const char* backend_name(Backend b) { return b == Backend::Sorted ? "sorted" : "pairwise"; }

struct ReduceConfig {
  Backend backend = Backend::Sorted;
  bool self_subsumption = false;
};

struct SweepStats {
  uint32_t sweep = 0;
  uint64_t clauses = 0;
  uint64_t width1 = 0, width2 = 0, width3 = 0;
  uint64_t record_count = 0;  // sorted backend
  uint64_t comparisons = 0;   // sorted backend
  uint64_t pair_tests = 0;    // pairwise backend
  uint64_t candidates = 0;
  uint64_t applied = 0;
  uint64_t skipped = 0;
};

enum class ReduceStatus { Irreducible, ContradictionFound };

struct ReductionTrace {
  std::vector<RewriteStep> steps;
  uint32_t sweeps = 0;  // sweeps that applied at least one rewrite
  uint32_t passes = 0;  // all sweeps, including the final no-op one
  uint64_t eliminations = 0;
  uint64_t initial_literals = 0;
  std::vector<SweepStats> sweep_stats;
};

/// Result of reduction. When Irreducible, no rule candidate remains and the
/// units carry no complementary pair.
class IrreducibleForm {
 public:
  IrreducibleForm(ReduceStatus status, Formula formula) : status_(status), formula_(std::move(formula)) {
    for (const auto& c : formula_.clauses()) {
      if (c.width() == 1)
        units_.push_back(c.literals()[0]);
      else
        residual_.push_back(c);
    }
  }

  ReduceStatus status() const { return status_; }
  const Formula& formula() const { return formula_; }
  const std::vector<Literal>& units() const { return units_; }
  const std::vector<Clause>& residual() const { return residual_; }
  uint32_t num_vars() const { return formula_.num_vars(); }

 private:
  ReduceStatus status_;
  Formula formula_;
  std::vector<Literal> units_;
  std::vector<Clause> residual_;
};

struct SweepResult {
  Formula formula;
  std::vector<RewriteStep> steps;
  SweepStats stats;
  bool contradiction = false;
  uint64_t eliminations = 0;
};

inline std::vector<ReductionCandidate> discover(const Formula& f, const ReduceConfig& cfg,
                                                SweepStats& stats) {
  ScanOptions opts{cfg.self_subsumption};
  if (cfg.backend == Backend::Pairwise)
    return pairwise_candidates(f.clauses(), opts, &stats.pair_tests);
  auto sorted = sort_records(expand_permutations(f));
  stats.record_count = sorted.stats.record_count;
  stats.comparisons = sorted.stats.comparisons;
  return scan_adjacent(sorted.records, opts);
}

/// One discovery pass plus application in (rule priority, lowest source id)
/// order. Candidates whose sources were consumed earlier in the sweep are
/// skipped. Stops at the first empty clause.
inline SweepResult sweep(const Formula& f, const ReduceConfig& cfg, uint32_t sweep_no = 1) {
  SweepResult res;
  res.stats.sweep = sweep_no;
  res.stats.clauses = f.size();
  for (const auto& c : f.clauses()) {
    if (c.width() == 1) ++res.stats.width1;
    else if (c.width() == 2) ++res.stats.width2;
    else ++res.stats.width3;
  }
  auto cands = discover(f, cfg, res.stats);
  res.stats.candidates = cands.size();

  std::map<ClauseId, ClauseLits> alive;
  std::unordered_map<ClauseLits, ClauseId, ClauseLitsHash> by_lits;
  for (const auto& c : f.clauses()) {
    alive.emplace(c.id(), c.lits());
    by_lits.emplace(c.lits(), c.id());
  }
  ClauseId next_id = f.next_id();

  auto erase = [&](ClauseId id) {
    auto it = alive.find(id);
    res.eliminations += it->second.width();
    by_lits.erase(it->second);
    alive.erase(it);
  };
  // Inserts a product; returns false on contradiction.
  auto produce = [&](Rule rule, std::vector<ClauseId> inputs, ClauseLits lits) {
    RewriteStep st{rule, sweep_no, std::move(inputs), OutputKind::Clause, 0, lits};
    if (lits.empty()) {
      st.output = OutputKind::Empty;
      res.steps.push_back(st);
      return false;
    }
    st.output_id = next_id++;
    res.eliminations -= lits.width();
    res.steps.push_back(st);
    auto [it, inserted] = by_lits.try_emplace(lits, st.output_id);
    if (inserted) {
      alive.emplace(st.output_id, lits);
    } else {
      res.steps.push_back({Rule::Dedup, sweep_no, {it->second, st.output_id}, OutputKind::Removed,
                           st.output_id, {}});
      res.eliminations += lits.width();
    }
    return true;
  };

  for (const auto& c : cands) {
    auto a = alive.find(c.sources[0]);
    auto b = alive.find(c.sources[1]);
    if (a == alive.end() || b == alive.end()) {
      ++res.stats.skipped;
      continue;
    }
    ++res.stats.applied;
    const ClauseLits la = a->second, lb = b->second;
    bool ok = true;
    switch (c.kind) {
      case Rule::Subsume:
        res.steps.push_back({Rule::Subsume, sweep_no, {c.sources[0], c.sources[1]}, OutputKind::Removed,
                             c.sources[1], {}});
        erase(c.sources[1]);
        break;
      case Rule::UnitResolve:
        erase(c.sources[1]);
        ok = produce(Rule::UnitResolve, {c.sources[0], c.sources[1]}, apply_unit_resolution(la[0], lb));
        break;
      case Rule::R1Merge:
        erase(c.sources[0]);
        erase(c.sources[1]);
        ok = produce(Rule::R1Merge, {c.sources[0], c.sources[1]}, apply_r1_merge(la, lb));
        break;
      case Rule::SelfSubsume:
        erase(c.sources[1]);
        ok = produce(Rule::SelfSubsume, {c.sources[0], c.sources[1]}, apply_self_subsumption(la, lb));
        break;
      default: throw Error(Errc::InvalidState, "unexpected candidate rule");
    }
    if (!ok) {
      res.contradiction = true;
      break;
    }
  }
  // candidates left unvisited after a contradiction count as skipped
  res.stats.skipped = res.stats.candidates - res.stats.applied;

  std::vector<Clause> clauses;
  clauses.reserve(alive.size());
  for (const auto& [id, lits] : alive) clauses.emplace_back(id, lits);
  res.formula = Formula::from_clauses(f.num_vars(), std::move(clauses), next_id, res.contradiction);
  return res;
}

/// Sweeps until nothing applies or a contradiction appears. Construction-time
/// drops (tautologies, duplicate input clauses) open the trace as sweep-0
/// steps.
inline std::pair<IrreducibleForm, ReductionTrace> reduce_to_fixpoint(const Formula& input,
                                                                     const ReduceConfig& cfg = {}) {
  ReductionTrace trace;
  trace.initial_literals = input.literal_instances();
  for (const auto& d : input.dropped()) {
    trace.initial_literals += d.lits.width();
    trace.eliminations += d.lits.width();
    if (d.reason == DropReason::Tautology)
      trace.steps.push_back({Rule::TautologyDrop, 0, {d.id}, OutputKind::Removed, d.id, {}});
    else
      trace.steps.push_back({Rule::Dedup, 0, {d.duplicate_of, d.id}, OutputKind::Removed, d.id, {}});
  }
  if (input.has_empty_clause())
    return {IrreducibleForm(ReduceStatus::ContradictionFound, input), std::move(trace)};

  Formula current = input;
  for (uint32_t pass = 1;; ++pass) {
    auto sw = sweep(current, cfg, pass);
    trace.passes = pass;
    trace.sweep_stats.push_back(sw.stats);
    trace.eliminations += sw.eliminations;
    if (!sw.steps.empty()) ++trace.sweeps;
    trace.steps.insert(trace.steps.end(), sw.steps.begin(), sw.steps.end());
    current = std::move(sw.formula);
    if (sw.contradiction)
      return {IrreducibleForm(ReduceStatus::ContradictionFound, std::move(current)), std::move(trace)};
    if (sw.steps.empty()) break;
  }
  return {IrreducibleForm(ReduceStatus::Irreducible, std::move(current)), std::move(trace)};
}

// --- replay ----------------------------------------------------------------

using ClauseState = std::map<ClauseId, ClauseLits>;

struct ReplayResult {
  bool ok = false;
  std::string error;
  ClauseState final_state;
  bool contradiction = false;
};

/// Re-applies a trace to the raw input (retained plus dropped clauses),
/// recomputing every product with the single-rewrite functions. `observer`
/// sees the state before and after each step.
inline ReplayResult replay(
    const Formula& input, const ReductionTrace& trace,
    const std::function<void(const RewriteStep&, const ClauseState&, const ClauseState&)>& observer = {}) {
  ReplayResult res;
  ClauseState state;
  for (const auto& c : input.clauses()) state.emplace(c.id(), c.lits());
  for (const auto& d : input.dropped()) state.emplace(d.id, d.lits);
  res.contradiction = input.has_empty_clause();

  auto fail = [&](size_t i, const std::string& why) {
    res.ok = false;
    res.error = "step " + std::to_string(i) + ": " + why;
    res.final_state = state;
    return res;
  };

  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& st = trace.steps[i];
    if (res.contradiction) return fail(i, "step after contradiction");
    std::vector<ClauseLits> in;
    for (auto id : st.inputs) {
      auto it = state.find(id);
      if (it == state.end()) return fail(i, "input clause " + std::to_string(id) + " not present");
      in.push_back(it->second);
    }
    ClauseState before;
    if (observer) before = state;
    try {
      std::optional<ClauseLits> product;
      switch (st.rule) {
        case Rule::TautologyDrop:
          if (in.size() != 1 || !in[0].tautological()) return fail(i, "not a tautology");
          break;
        case Rule::Dedup:
          if (in.size() != 2 || in[0] != in[1] || st.inputs[0] == st.inputs[1])
            return fail(i, "dedup of distinct clauses");
          break;
        case Rule::Subsume:
          if (in.size() != 2) return fail(i, "arity");
          check_subsumption(in[0], in[1]);
          break;
        case Rule::UnitResolve:
          if (in.size() != 2 || in[0].width() != 1) return fail(i, "unit-resolve needs a unit");
          product = apply_unit_resolution(in[0][0], in[1]);
          break;
        case Rule::R1Merge:
          if (in.size() != 2) return fail(i, "arity");
          product = apply_r1_merge(in[0], in[1]);
          break;
        case Rule::SelfSubsume:
          if (in.size() != 2) return fail(i, "arity");
          product = apply_self_subsumption(in[0], in[1]);
          break;
      }
      for (auto id : st.removed_ids()) state.erase(id);
      if (product) {
        if (*product != st.output_lits) return fail(i, "recorded product differs from recomputed one");
        if (product->empty()) {
          if (st.output != OutputKind::Empty) return fail(i, "empty product not marked");
          res.contradiction = true;
        } else {
          if (st.output != OutputKind::Clause) return fail(i, "product not marked as clause");
          if (state.contains(st.output_id)) return fail(i, "product id reused");
          state.emplace(st.output_id, *product);
        }
      } else if (st.output != OutputKind::Removed) {
        return fail(i, "removal step with a product");
      }
    } catch (const Error& e) {
      return fail(i, e.what());
    }
    if (observer) observer(st, before, state);
  }
  res.ok = true;
  res.final_state = std::move(state);
  return res;
}

/// True iff replaying `trace` on `input` ends exactly at `form`.
inline bool replay_matches(const Formula& input, const ReductionTrace& trace, const IrreducibleForm& form,
                           std::string* why = nullptr) {
  auto r = replay(input, trace);
  if (!r.ok) {
    if (why) *why = r.error;
    return false;
  }
  bool contra = form.status() == ReduceStatus::ContradictionFound;
  if (r.contradiction != contra) {
    if (why) *why = "contradiction status differs";
    return false;
  }
  ClauseState expect;
  for (const auto& c : form.formula().clauses()) expect.emplace(c.id(), c.lits());
  if (expect != r.final_state) {
    if (why) *why = "final clause set differs";
    return false;
  }
  return true;
}

// --- text export -----------------------------------------------------------

/// One line per step: "<sweep> <rule> <input ids> => <output>", where output
/// is "#<id> <dimacs literals> 0", "empty" or "removed #<id>".
inline std::string trace_to_text(const ReductionTrace& trace) {
  std::ostringstream os;
  for (const auto& st : trace.steps) {
    os << st.sweep << ' ' << rule_name(st.rule);
    for (auto id : st.inputs) os << ' ' << id;
    os << " => ";
    switch (st.output) {
      case OutputKind::Clause:
        os << '#' << st.output_id;
        for (auto l : st.output_lits) os << ' ' << l.dimacs();
        os << " 0";
        break;
      case OutputKind::Empty: os << "empty"; break;
      case OutputKind::Removed: os << "removed #" << st.output_id; break;
    }
    os << '\n';
  }
  return os.str();
}

inline const char* status_name(ReduceStatus s) {
  return s == ReduceStatus::Irreducible ? "irreducible" : "contradiction";
}

}  // namespace sortsweep

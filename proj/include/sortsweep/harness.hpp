#pragma once

// Instance generation and the differential harness: every instance goes
// through reduction and expansion, is cross-checked against the oracles,
// and lands in exactly one outcome class.

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sortsweep/cnf.hpp"
#include "sortsweep/dimacs.hpp"
#include "sortsweep/expand.hpp"
#include "sortsweep/kv.hpp"
#include "sortsweep/oracle.hpp"
#include "sortsweep/reduce.hpp"

namespace sortsweep {

struct GenConfig {
  uint32_t n = 0;
  uint32_t m = 0;
  uint64_t seed = 0;
  std::optional<double> ratio;  // when set, m = round(ratio * n)

  uint32_t clause_count() const {
    return ratio ? static_cast<uint32_t>(std::lround(*ratio * n)) : m;
  }
};

/// Uniform random 3-CNF: each clause over 3 distinct variables with
/// independent signs. Deterministic for a given seed.
inline Formula gen_random(const GenConfig& cfg) {
  if (cfg.n < 3) throw Error(Errc::TooFewVariables, "random 3-CNF needs at least 3 variables");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<uint32_t> pick(1, cfg.n);
  std::bernoulli_distribution sign(0.5);
  std::vector<std::vector<Literal>> raw;
  const uint32_t m = cfg.clause_count();
  raw.reserve(m);
  for (uint32_t i = 0; i < m; ++i) {
    std::array<uint32_t, 3> vs{};
    for (size_t k = 0; k < 3; ++k) {
      do {
        vs[k] = pick(rng);
      } while (std::find(vs.begin(), vs.begin() + k, vs[k]) != vs.begin() + k);
    }
    auto& c = raw.emplace_back();
    for (auto v : vs) c.push_back(encode_literal(Var{v}, sign(rng)));
  }
  return Formula::build(cfg.n, raw);
}

/// All 2^3 sign patterns over three variables: unsatisfiable, and reducible
/// to a contradiction by merges alone.
inline Formula gen_complete_signs(uint32_t k) {
  if (k != 3) throw Error(Errc::Unsupported, "complete-signs family is defined for k = 3");
  std::vector<std::vector<Literal>> raw;
  for (uint32_t mask = 0; mask < 8; ++mask) {
    auto& c = raw.emplace_back();
    for (uint32_t v = 1; v <= 3; ++v) c.push_back(encode_literal(Var{v}, (mask >> (v - 1)) & 1));
  }
  return Formula::build(3, raw);
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Instance {
  Formula formula;
  uint64_t seed = 0;
  std::string family = "random";
};

/// Random corpus cycling through the clause/variable ratios, with n sweeping
/// n_min..n_max.
inline std::vector<Instance> random_corpus(size_t count, uint32_t n_min, uint32_t n_max,
                                           const std::vector<double>& ratios, uint64_t base_seed) {
  std::vector<Instance> out;
  out.reserve(count);
  const uint32_t span = n_max - n_min + 1;
  for (size_t i = 0; i < count; ++i) {
    GenConfig g;
    g.n = n_min + static_cast<uint32_t>((i / ratios.size()) % span);
    g.ratio = ratios[i % ratios.size()];
    g.seed = splitmix64(base_seed + i);
    out.push_back({gen_random(g), g.seed, "random"});
  }
  return out;
}

enum class OutcomeClass { AgreeSat, ReductionUnsat, ClaimViolation, SolverBug, Budget };
inline constexpr size_t kOutcomeClasses = 5;

inline const char* outcome_name(OutcomeClass c) {
  switch (c) {
    case OutcomeClass::AgreeSat: return "AgreeSat";
    case OutcomeClass::ReductionUnsat: return "ReductionUnsat";
    case OutcomeClass::ClaimViolation: return "ClaimViolation";
    case OutcomeClass::SolverBug: return "SolverBug";
    case OutcomeClass::Budget: return "Budget";
  }
  return "?";
}

inline std::optional<OutcomeClass> outcome_from_name(std::string_view s) {
  for (size_t i = 0; i < kOutcomeClasses; ++i)
    if (s == outcome_name(static_cast<OutcomeClass>(i))) return static_cast<OutcomeClass>(i);
  return std::nullopt;
}

struct HarnessConfig {
  ReduceConfig reduce;
  uint64_t search_budget = 200'000'000;  // expansion literal choices
  unsigned workers = 0;                  // 0: hardware concurrency
  std::optional<std::filesystem::path> certificate_dir;
};

struct InstanceOutcome {
  size_t index = 0;
  uint64_t seed = 0;
  std::string family;
  uint32_t n = 0;
  uint64_t m = 0;
  OutcomeClass cls = OutcomeClass::SolverBug;
  uint32_t sweeps = 0;
  uint64_t eliminations = 0;
  uint64_t branches = 0;
  uint64_t reroutes = 0;
  uint64_t records = 0;
  uint64_t comparisons = 0;
  uint64_t pair_tests = 0;
  bool bounds_ok = true;
  std::string oracle;  // verdict
  std::string oracle_method;
  std::string note;
  std::optional<std::filesystem::path> certificate;

  std::string record() const {
    KvLine l("instance");
    l.add("index", index).add("seed", seed).add("family", family).add("n", n).add("m", m);
    l.add("class", outcome_name(cls)).add("sweeps", sweeps).add("eliminations", eliminations);
    l.add("branches", branches).add("reroutes", reroutes).add("records", records);
    l.add("comparisons", comparisons).add("pair_tests", pair_tests).add("bounds_ok", bounds_ok);
    l.add("oracle", oracle).add("oracle_method", oracle_method);
    if (!note.empty()) l.add("note", note);
    return l.str();
  }
};

/// Everything needed to classify one instance, kept for certificates.
struct Classification {
  InstanceOutcome outcome;
  std::optional<IrreducibleForm> form;
  ReductionTrace trace;
  std::optional<SearchOutcome> search;
};

/// Runs reduction, expansion and the oracles on one formula.
inline Classification classify(const Formula& f, const HarnessConfig& cfg) {
  Classification cl;
  auto& o = cl.outcome;
  o.n = f.num_vars();
  o.m = f.input_clause_count();
  auto bug = [&](std::string why) {
    o.cls = OutcomeClass::SolverBug;
    if (!o.note.empty()) o.note += "; ";
    o.note += why;
  };

  auto [form, trace] = reduce_to_fixpoint(f, cfg.reduce);
  o.sweeps = trace.sweeps;
  o.eliminations = trace.eliminations;
  for (const auto& s : trace.sweep_stats) {
    o.records += s.record_count;
    o.comparisons += s.comparisons;
    o.pair_tests += s.pair_tests;
    if (cfg.reduce.backend == Backend::Sorted) {
      if (s.record_count != 6 * s.width3 + 2 * s.width2 + s.width1) o.bounds_ok = false;
      if (static_cast<double>(s.comparisons) > comparison_bound(s.record_count)) o.bounds_ok = false;
    } else if (s.pair_tests != s.clauses * (s.clauses - (s.clauses > 0)) / 2) {
      o.bounds_ok = false;
    }
  }
  if (trace.eliminations > 3 * o.m) o.bounds_ok = false;

  std::string why;
  bool replay_ok = replay_matches(f, trace, form, &why);

  Verdict oracle;
  if (f.num_vars() <= kTruthTableVars) {
    auto tt = truth_table_solve(f, false);
    auto bt = backtracking_solve(f);
    oracle = tt.verdict;
    o.oracle_method = "truth-table";
    if (tt.verdict != bt.verdict) bug("truth table and backtracking disagree");
    if (bt.witness && !evaluate(f, *bt.witness)) bug("backtracking witness fails");
  } else {
    oracle = backtracking_solve(f).verdict;
    o.oracle_method = "backtracking";
  }
  o.oracle = verdict_name(oracle);

  if (form.status() == ReduceStatus::ContradictionFound) {
    o.cls = oracle == Verdict::Unsat ? OutcomeClass::ReductionUnsat : OutcomeClass::SolverBug;
    if (oracle == Verdict::Sat) bug("contradiction reported on a satisfiable formula");
  } else {
    auto s = expand(form, 1, cfg.search_budget);
    o.branches = s.branches_explored;
    o.reroutes = s.reroutes;
    switch (s.kind) {
      case SearchKind::FoundAssignments:
        if (!evaluate(f, s.assignments.front()) || !evaluate(form.formula(), s.assignments.front()))
          bug("expansion model fails verification");
        else if (oracle == Verdict::Unsat)
          bug("oracle says UNSAT but a verified model exists");
        else
          o.cls = OutcomeClass::AgreeSat;
        break;
      case SearchKind::Exhausted:
        if (oracle == Verdict::Sat)
          bug("expansion exhausted on a satisfiable formula");
        else
          o.cls = OutcomeClass::ClaimViolation;
        break;
      case SearchKind::BudgetExceeded: o.cls = OutcomeClass::Budget; break;
    }
    cl.search = std::move(s);
  }
  if (!replay_ok) bug("trace replay: " + why);
  if (!o.bounds_ok) bug("instrumentation bound violated");
  if (o.cls == OutcomeClass::SolverBug && o.note.empty()) o.note = "unclassified";
  cl.form = std::move(form);
  cl.trace = std::move(trace);
  return cl;
}

inline std::string config_line(const HarnessConfig& cfg) {
  return KvLine("config")
      .add("backend", backend_name(cfg.reduce.backend))
      .add("r4", cfg.reduce.self_subsumption)
      .add("budget", cfg.search_budget)
      .str();
}

/// Writes instance, irreducible form, trace and outcome record into `dir`.
inline void write_certificate(const std::filesystem::path& dir, const Formula& f, const Classification& cl,
                              const HarnessConfig& cfg) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "instance.cnf") << write_dimacs(f);
  std::ofstream(dir / "trace.log") << trace_to_text(cl.trace);
  if (cl.form) {
    std::ofstream irr(dir / "irreducible.cnf");
    irr << "c status " << status_name(cl.form->status()) << "\n";
    irr << write_dimacs(cl.form->formula());
  }
  std::ofstream out(dir / "outcome.txt");
  out << config_line(cfg) << "\n" << cl.outcome.record() << "\n";
  if (cl.search) {
    out << KvLine("search")
               .add("kind", search_kind_name(cl.search->kind))
               .add("branches", cl.search->branches_explored)
               .add("reroutes", cl.search->reroutes)
               .add("budget", cfg.search_budget)
               .str()
        << "\n";
  }
  out << KvLine("oracle").add("verdict", cl.outcome.oracle).add("method", cl.outcome.oracle_method).str() << "\n";
}

struct CertificateCheck {
  bool ok = false;
  std::string message;
  std::optional<OutcomeClass> stored, recomputed;
};

/// Re-runs reduction, expansion and oracle on a stored certificate and
/// checks that the classification and the irreducible form reproduce.
inline CertificateCheck verify_certificate(const std::filesystem::path& dir) {
  CertificateCheck chk;
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto parsed = parse_dimacs(slurp(dir / "instance.cnf"));
  if (!parsed.ok()) {
    chk.message = "instance.cnf does not parse";
    return chk;
  }
  HarnessConfig cfg;
  std::istringstream lines(slurp(dir / "outcome.txt"));
  for (std::string line; std::getline(lines, line);) {
    auto kv = parse_kv(line);
    if (kv[""] == "config") {
      cfg.reduce.backend = kv["backend"] == "pairwise" ? Backend::Pairwise : Backend::Sorted;
      cfg.reduce.self_subsumption = kv["r4"] == "1";
      cfg.search_budget = std::stoull(kv["budget"]);
    } else if (kv[""] == "instance") {
      chk.stored = outcome_from_name(kv["class"]);
    }
  }
  if (!chk.stored) {
    chk.message = "outcome.txt lacks an instance record";
    return chk;
  }
  auto cl = classify(*parsed.formula, cfg);
  chk.recomputed = cl.outcome.cls;
  if (chk.recomputed != chk.stored) {
    chk.message = std::string("class differs: stored ") + outcome_name(*chk.stored) + ", recomputed " +
                  outcome_name(*chk.recomputed);
    return chk;
  }
  if (std::filesystem::exists(dir / "irreducible.cnf") && cl.form) {
    auto irr = parse_dimacs(slurp(dir / "irreducible.cnf"));
    if (!irr.ok() || !irr.formula->same_clauses(cl.form->formula())) {
      chk.message = "irreducible form differs";
      return chk;
    }
  }
  chk.ok = true;
  chk.message = "reproduced";
  return chk;
}

struct HarnessReport {
  std::string config;
  std::vector<InstanceOutcome> outcomes;
  std::array<size_t, kOutcomeClasses> counts{};
  uint32_t max_sweeps = 0;
  std::map<uint32_t, size_t> sweep_histogram;
  size_t over_three_sweeps = 0;
  size_t bound_violations = 0;
  size_t oracle_unsat = 0;
  uint64_t total_eliminations = 0;
  uint64_t total_records = 0;
  uint64_t total_comparisons = 0;

  size_t count(OutcomeClass c) const { return counts[static_cast<size_t>(c)]; }
};

/// Classifies every instance. Work is spread over `cfg.workers` threads;
/// results are merged by instance index, so the report does not depend on
/// the worker count.
inline HarnessReport run_differential(const std::vector<Instance>& instances, const HarnessConfig& cfg) {
  HarnessReport rep;
  rep.config = config_line(cfg);
  rep.outcomes.resize(instances.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next.fetch_add(1)) < instances.size();) {
      const auto& inst = instances[i];
      InstanceOutcome o;
      try {
        auto cl = classify(inst.formula, cfg);
        cl.outcome.index = i;
        cl.outcome.seed = inst.seed;
        cl.outcome.family = inst.family;
        if (cfg.certificate_dir &&
            (cl.outcome.cls == OutcomeClass::ClaimViolation || cl.outcome.cls == OutcomeClass::SolverBug)) {
          char name[32];
          std::snprintf(name, sizeof name, "instance-%06zu", i);
          auto dir = *cfg.certificate_dir / name;
          write_certificate(dir, inst.formula, cl, cfg);
          cl.outcome.certificate = dir;
        }
        o = std::move(cl.outcome);
      } catch (const std::exception& e) {
        o.index = i;
        o.seed = inst.seed;
        o.family = inst.family;
        o.cls = OutcomeClass::SolverBug;
        o.note = std::string("exception: ") + e.what();
      }
      rep.outcomes[i] = std::move(o);
    }
  };
  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<size_t>(workers, std::max<size_t>(instances.size(), 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (const auto& o : rep.outcomes) {
    ++rep.counts[static_cast<size_t>(o.cls)];
    rep.max_sweeps = std::max(rep.max_sweeps, o.sweeps);
    ++rep.sweep_histogram[o.sweeps];
    rep.over_three_sweeps += o.sweeps > 3;
    rep.bound_violations += !o.bounds_ok;
    rep.oracle_unsat += o.oracle == "UNSAT";
    rep.total_eliminations += o.eliminations;
    rep.total_records += o.records;
    rep.total_comparisons += o.comparisons;
  }
  return rep;
}

/// Machine-readable report: config line, one record per instance, aggregate.
inline std::string format_report(const HarnessReport& rep) {
  std::string out = rep.config + "\n";
  for (const auto& o : rep.outcomes) out += o.record() + "\n";
  KvLine agg("aggregate");
  agg.add("instances", rep.outcomes.size());
  for (size_t i = 0; i < kOutcomeClasses; ++i) agg.add(outcome_name(static_cast<OutcomeClass>(i)), rep.counts[i]);
  agg.add("oracle_unsat", rep.oracle_unsat)
      .add("max_sweeps", rep.max_sweeps)
      .add("over_three_sweeps", rep.over_three_sweeps)
      .add("bound_violations", rep.bound_violations)
      .add("eliminations", rep.total_eliminations)
      .add("records", rep.total_records)
      .add("comparisons", rep.total_comparisons);
  out += agg.str() + "\n";
  std::string hist;
  for (const auto& [s, c] : rep.sweep_histogram) hist += (hist.empty() ? "" : ",") + std::to_string(s) + ":" + std::to_string(c);
  out += KvLine("sweeps").add("histogram", hist).str() + "\n";
  return out;
}

inline std::string format_summary(const HarnessReport& rep) {
  std::ostringstream os;
  os << "instances:          " << rep.outcomes.size() << "\n";
  for (size_t i = 0; i < kOutcomeClasses; ++i)
    os << "  " << outcome_name(static_cast<OutcomeClass>(i)) << std::string(18 - std::string(outcome_name(static_cast<OutcomeClass>(i))).size(), ' ')
       << rep.counts[i] << "\n";
  os << "oracle UNSAT:       " << rep.oracle_unsat << "\n";
  os << "  caught by reduction:     " << rep.count(OutcomeClass::ReductionUnsat) << "\n";
  os << "  missed (claim violation): " << rep.count(OutcomeClass::ClaimViolation) << "\n";
  os << "sweeps to fixpoint: max " << rep.max_sweeps << ", runs over three: " << rep.over_three_sweeps << "\n";
  os << "  distribution:";
  for (const auto& [s, c] : rep.sweep_histogram) os << " " << s << ":" << c;
  os << "\n";
  os << "bound violations:   " << rep.bound_violations << "\n";
  os << "eliminations:       " << rep.total_eliminations << "\n";
  os << "sort comparisons:   " << rep.total_comparisons << " over " << rep.total_records << " records\n";
  return os.str();
}

}  // namespace sortsweep

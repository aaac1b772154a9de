// Command-line front end: solve, reduce, enumerate, oracle, verify-appendix,
// gen, harness and bench.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sortsweep/sortsweep.hpp"

namespace {

using namespace sortsweep;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitUnknown = 30;

struct EngineFlags {
  std::string backend = "sorted";
  bool enable_r4 = false;

  ReduceConfig config() const {
    return {backend == "pairwise" ? Backend::Pairwise : Backend::Sorted, enable_r4};
  }
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--backend", f.backend, "Candidate discovery: sorted or pairwise")
      ->check(CLI::IsMember({"sorted", "pairwise"}));
  cmd->add_flag("--enable-r4", f.enable_r4, "Also apply self-subsuming resolution");
}

std::optional<Formula> load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << path << ": cannot open\n";
    return std::nullopt;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto res = parse_dimacs(ss.str());
  for (const auto& d : res.diagnostics) std::cerr << path << ":" << d.to_string() << "\n";
  return res.formula;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) std::cerr << path << ": cannot write\n";
  return static_cast<bool>(out);
}

void print_reduction(const IrreducibleForm& form, const ReductionTrace& trace) {
  std::cout << "c reduction: " << status_name(form.status()) << " after " << trace.sweeps
            << " sweeps, " << trace.eliminations << " literal eliminations, " << form.units().size()
            << " units, " << form.residual().size() << " residual clauses\n";
}

// --- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string path;
  EngineFlags engine;
  uint64_t budget = kUnlimited;
  std::string trace_path;
  bool no_model = false;
};

int cmd_solve(const SolveArgs& a) {
  auto f = load(a.path);
  if (!f) return kExitUsage;
  auto [form, trace] = reduce_to_fixpoint(*f, a.engine.config());
  if (!a.trace_path.empty() && !write_file(a.trace_path, trace_to_text(trace))) return kExitUsage;
  print_reduction(form, trace);
  if (form.status() == ReduceStatus::ContradictionFound) {
    std::cout << "c reason: reduction\ns UNSATISFIABLE\n";
    return kExitUnsat;
  }
  auto s = expand(form, 1, a.budget);
  std::cout << "c expansion: " << s.branches_explored << " choices, " << s.reroutes << " re-routes\n";
  switch (s.kind) {
    case SearchKind::FoundAssignments: {
      const auto& model = s.assignments.front();
      if (!evaluate(*f, model)) {
        std::cout << "c internal error: model does not satisfy the input\ns UNKNOWN\n";
        return kExitUnknown;
      }
      std::cout << "s SATISFIABLE\n";
      if (!a.no_model) std::cout << format_value_line(model) << "\n";
      return kExitSat;
    }
    case SearchKind::Exhausted: std::cout << "c reason: exhaustion\ns UNSATISFIABLE\n"; return kExitUnsat;
    case SearchKind::BudgetExceeded: std::cout << "s UNKNOWN\n"; return kExitUnknown;
  }
  return kExitUnknown;
}

// --- reduce ----------------------------------------------------------------

struct ReduceArgs {
  std::string path;
  EngineFlags engine;
  std::string trace_path;
};

int cmd_reduce(const ReduceArgs& a) {
  auto f = load(a.path);
  if (!f) return kExitUsage;
  auto [form, trace] = reduce_to_fixpoint(*f, a.engine.config());
  if (!a.trace_path.empty() && !write_file(a.trace_path, trace_to_text(trace))) return kExitUsage;
  print_reduction(form, trace);
  for (const auto& s : trace.sweep_stats)
    std::cout << "c sweep " << s.sweep << ": clauses " << s.clauses << ", records " << s.record_count
              << ", comparisons " << s.comparisons << ", pair tests " << s.pair_tests << ", candidates "
              << s.candidates << ", applied " << s.applied << ", skipped " << s.skipped << "\n";
  if (form.formula().num_vars() <= 26 && form.formula().size() <= 64)
    std::cout << "c " << format_product_notation(form.formula()) << "\n";
  std::cout << write_dimacs(form.formula());
  return kExitOk;
}

// --- enumerate -------------------------------------------------------------

struct EnumerateArgs {
  std::string path;
  EngineFlags engine;
  uint64_t limit = 20;
  uint64_t budget = kUnlimited;
};

int cmd_enumerate(const EnumerateArgs& a) {
  auto f = load(a.path);
  if (!f) return kExitUsage;
  auto [form, trace] = reduce_to_fixpoint(*f, a.engine.config());
  print_reduction(form, trace);
  if (form.status() == ReduceStatus::ContradictionFound) {
    std::cout << "c branches 0\ns UNSATISFIABLE\n";
    return kExitUnsat;
  }
  auto s = expand(form, a.limit, a.budget);
  const uint32_t n = form.num_vars();
  for (size_t i = 0; i < s.branches.size(); ++i) {
    std::string text;
    for (auto u : form.units()) text += (text.empty() ? "" : ".") + format_literal(u, n);
    for (auto l : s.branches[i].chosen) text += (text.empty() ? "(" : ".(") + format_literal(l, n) + ")";
    std::cout << "c branch " << i + 1 << ": " << text << "\n" << format_value_line(s.assignments[i]) << "\n";
  }
  std::cout << "c branches " << s.branches.size() << "\n";
  switch (s.kind) {
    case SearchKind::FoundAssignments: std::cout << "s SATISFIABLE\n"; return kExitSat;
    case SearchKind::Exhausted: std::cout << "s UNSATISFIABLE\n"; return kExitUnsat;
    case SearchKind::BudgetExceeded: std::cout << "s UNKNOWN\n"; return kExitUnknown;
  }
  return kExitUnknown;
}

// --- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string path;
  std::string method = "truth-table";
};

int cmd_oracle(const OracleArgs& a) {
  auto f = load(a.path);
  if (!f) return kExitUsage;
  OracleResult r;
  if (a.method == "truth-table") {
    if (f->num_vars() > kTruthTableVars) {
      std::cerr << "truth table limited to " << kTruthTableVars << " variables\n";
      return kExitUsage;
    }
    r = truth_table_solve(*f);
    std::cout << "c models " << *r.model_count << "\n";
  } else {
    r = backtracking_solve(*f);
  }
  if (r.verdict == Verdict::Unsat) {
    std::cout << "s UNSATISFIABLE\n";
    return kExitUnsat;
  }
  std::cout << "s SATISFIABLE\n" << format_value_line(*r.witness) << "\n";
  return kExitSat;
}

// --- verify-appendix -------------------------------------------------------

int cmd_verify_appendix(bool enable_r4, bool kv) {
  auto rep = run_appendix_suite(enable_r4);
  std::cout << (kv ? appendix_report_kv(rep) : appendix_report_text(rep));
  return rep.all_equalities_ok() ? kExitOk : kExitUsage;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string family = "random";
  uint32_t n = 0;
  uint32_t m = 0;
  uint64_t seed = 1;
  double ratio = 0.0;
};

int cmd_gen(const GenArgs& a) {
  try {
    if (a.family == "complete-signs") {
      std::cout << write_dimacs(gen_complete_signs(a.n ? a.n : 3));
      return kExitOk;
    }
    GenConfig g{a.n, a.m, a.seed, std::nullopt};
    if (a.ratio > 0) g.ratio = a.ratio;
    std::cout << "c random 3-CNF n=" << a.n << " m=" << g.clause_count() << " seed=" << a.seed << "\n";
    std::cout << write_dimacs(gen_random(g));
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

// --- harness ---------------------------------------------------------------

struct HarnessArgs {
  EngineFlags engine;
  size_t count = 300;
  uint32_t n_min = 10;
  uint32_t n_max = 20;
  std::vector<double> ratios = {3.0, 4.3, 5.0};
  uint64_t seed = 1;
  unsigned workers = 0;
  std::string out;
  uint64_t budget = 200'000'000;
  std::vector<std::string> files;
};

int cmd_harness(const HarnessArgs& a) {
  std::vector<Instance> corpus;
  if (!a.files.empty()) {
    for (const auto& p : a.files) {
      auto f = load(p);
      if (!f) return kExitUsage;
      corpus.push_back({std::move(*f), 0, p});
    }
  } else {
    if (a.n_min < 3 || a.n_max < a.n_min || a.ratios.empty()) {
      std::cerr << "need 3 <= n-min <= n-max and at least one ratio\n";
      return kExitUsage;
    }
    corpus = random_corpus(a.count, a.n_min, a.n_max, a.ratios, a.seed);
  }
  HarnessConfig cfg;
  cfg.reduce = a.engine.config();
  cfg.search_budget = a.budget;
  cfg.workers = a.workers;
  if (!a.out.empty()) cfg.certificate_dir = std::filesystem::path(a.out) / "certificates";
  auto rep = run_differential(corpus, cfg);
  auto summary = format_summary(rep);
  if (!a.out.empty()) {
    std::filesystem::create_directories(a.out);
    if (!write_file((std::filesystem::path(a.out) / "report.txt").string(), format_report(rep)) ||
        !write_file((std::filesystem::path(a.out) / "summary.txt").string(), summary))
      return kExitUsage;
  }
  std::cout << summary;
  return rep.count(OutcomeClass::SolverBug) == 0 ? kExitOk : kExitUsage;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string path;
  uint32_t n = 100;
  uint32_t m = 0;
  double ratio = 4.3;
  uint64_t seed = 1;
  bool enable_r4 = false;
};

int cmd_bench(const BenchArgs& a) {
  Formula f;
  if (!a.path.empty()) {
    auto g = load(a.path);
    if (!g) return kExitUsage;
    f = std::move(*g);
  } else {
    try {
      GenConfig g{a.n, a.m, a.seed, std::nullopt};
      if (a.m == 0) g.ratio = a.ratio;
      f = gen_random(g);
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kExitUsage;
    }
  }
  const uint64_t m = f.input_clause_count();
  bool ok = true;
  std::cout << "c bench n=" << f.num_vars() << " m=" << m << "\n";
  for (Backend b : {Backend::Sorted, Backend::Pairwise}) {
    auto [form, trace] = reduce_to_fixpoint(f, ReduceConfig{b, a.enable_r4});
    uint64_t total_tests = 0;
    for (const auto& s : trace.sweep_stats) {
      KvLine l("sweep");
      l.add("backend", backend_name(b)).add("sweep", s.sweep).add("clauses", s.clauses);
      if (b == Backend::Sorted) {
        uint64_t expect = 6 * s.width3 + 2 * s.width2 + s.width1;
        double bound = comparison_bound(s.record_count);
        bool rec_ok = s.record_count == expect;
        bool cmp_ok = static_cast<double>(s.comparisons) <= bound;
        ok = ok && rec_ok && cmp_ok;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", bound);
        l.add("records", s.record_count).add("expected_records", expect).add("comparisons", s.comparisons);
        l.add("bound_2RlogR_plus_R", std::string_view(buf)).add("within_bound", rec_ok && cmp_ok);
      } else {
        uint64_t expect = s.clauses * (s.clauses - (s.clauses > 0)) / 2;
        total_tests += s.pair_tests;
        ok = ok && s.pair_tests == expect;
        l.add("pair_tests", s.pair_tests).add("m_m1_over_2", expect);
      }
      l.add("candidates", s.candidates).add("applied", s.applied);
      std::cout << l.str() << "\n";
    }
    bool elim_ok = trace.eliminations <= 3 * m;
    ok = ok && elim_ok;
    KvLine t("total");
    t.add("backend", backend_name(b)).add("status", status_name(form.status()));
    t.add("sweeps", trace.sweeps).add("passes", trace.passes);
    t.add("eliminations", trace.eliminations).add("budget_3m", 3 * m).add("within_budget", elim_ok);
    if (b == Backend::Pairwise) t.add("pair_tests", total_tests).add("m_cubed", m * m * m);
    if (trace.sweeps > 3) t.add("exceeds_three_sweeps", true);
    std::cout << t.str() << "\n";
  }
  return ok ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sort-and-sweep 3-SAT reduction, expansion and differential testing"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "Reduce then expand a DIMACS file");
  c_solve->add_option("file", solve.path, "DIMACS CNF input")->required();
  add_engine_flags(c_solve, solve.engine);
  c_solve->add_option("--budget", solve.budget, "Maximum expansion choices");
  c_solve->add_option("--trace", solve.trace_path, "Write the reduction trace to this file");
  c_solve->add_flag("--no-model", solve.no_model, "Omit the v line");

  ReduceArgs reduce;
  auto* c_reduce = app.add_subcommand("reduce", "Print the irreducible form");
  c_reduce->add_option("file", reduce.path, "DIMACS CNF input")->required();
  add_engine_flags(c_reduce, reduce.engine);
  c_reduce->add_option("--trace", reduce.trace_path, "Write the reduction trace to this file");

  EnumerateArgs enumerate;
  auto* c_enum = app.add_subcommand("enumerate", "List satisfying expansion branches");
  c_enum->add_option("file", enumerate.path, "DIMACS CNF input")->required();
  add_engine_flags(c_enum, enumerate.engine);
  c_enum->add_option("--limit", enumerate.limit, "Maximum branches to print")->check(CLI::PositiveNumber);
  c_enum->add_option("--budget", enumerate.budget, "Maximum expansion choices");

  OracleArgs oracle;
  auto* c_oracle = app.add_subcommand("oracle", "Brute-force verdict and model count");
  c_oracle->add_option("file", oracle.path, "DIMACS CNF input")->required();
  c_oracle->add_option("--method", oracle.method, "truth-table or backtracking")
      ->check(CLI::IsMember({"truth-table", "backtracking"}));

  bool appendix_r4 = false, appendix_kv = false;
  auto* c_app = app.add_subcommand("verify-appendix", "Check the appendix case analysis");
  c_app->add_flag("--enable-r4", appendix_r4, "Run the engine with self-subsuming resolution");
  c_app->add_flag("--kv", appendix_kv, "Machine-readable key=value output");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate an instance as DIMACS on stdout");
  c_gen->add_option("--family", gen.family, "random or complete-signs")
      ->check(CLI::IsMember({"random", "complete-signs"}));
  c_gen->add_option("--n", gen.n, "Variables");
  c_gen->add_option("--m", gen.m, "Clauses");
  c_gen->add_option("--ratio", gen.ratio, "Clause/variable ratio (overrides --m)");
  c_gen->add_option("--seed", gen.seed, "Random seed");

  HarnessArgs harness;
  auto* c_h = app.add_subcommand("harness", "Differential test against the oracle");
  add_engine_flags(c_h, harness.engine);
  c_h->add_option("--count", harness.count, "Random instances to generate");
  c_h->add_option("--n-min", harness.n_min, "Smallest variable count");
  c_h->add_option("--n-max", harness.n_max, "Largest variable count");
  c_h->add_option("--ratios", harness.ratios, "Clause/variable ratios")->delimiter(',');
  c_h->add_option("--seed", harness.seed, "Base seed");
  c_h->add_option("--workers", harness.workers, "Worker threads (0: all cores)");
  c_h->add_option("--out", harness.out, "Directory for report.txt, summary.txt and certificates");
  c_h->add_option("--budget", harness.budget, "Maximum expansion choices per instance");
  c_h->add_option("files", harness.files, "DIMACS files to use instead of a random corpus");

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Report sort and sweep counters against their bounds");
  c_bench->add_option("file", bench.path, "DIMACS CNF input (default: a random instance)");
  c_bench->add_option("--n", bench.n, "Variables");
  c_bench->add_option("--m", bench.m, "Clauses (default: ratio * n)");
  c_bench->add_option("--ratio", bench.ratio, "Clause/variable ratio");
  c_bench->add_option("--seed", bench.seed, "Random seed");
  c_bench->add_flag("--enable-r4", bench.enable_r4, "Also apply self-subsuming resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c_solve) return cmd_solve(solve);
    if (*c_reduce) return cmd_reduce(reduce);
    if (*c_enum) return cmd_enumerate(enumerate);
    if (*c_oracle) return cmd_oracle(oracle);
    if (*c_app) return cmd_verify_appendix(appendix_r4, appendix_kv);
    if (*c_gen) return cmd_gen(gen);
    if (*c_h) return cmd_harness(harness);
    if (*c_bench) return cmd_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

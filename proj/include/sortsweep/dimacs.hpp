#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sortsweep/cnf.hpp"

namespace sortsweep {

enum class Severity { Warning, Error };

enum class DiagKind {
  SyntaxError,
  WidthExceeded,
  VarOutOfRange,
  MissingHeader,
  HeaderMismatch,
  UnterminatedClause,
  TautologyDropped,
  DuplicateDropped,
};

inline const char* diag_kind_name(DiagKind k) {
  switch (k) {
    case DiagKind::SyntaxError: return "SyntaxError";
    case DiagKind::WidthExceeded: return "WidthExceeded";
    case DiagKind::VarOutOfRange: return "VarOutOfRange";
    case DiagKind::MissingHeader: return "MissingHeader";
    case DiagKind::HeaderMismatch: return "HeaderMismatch";
    case DiagKind::UnterminatedClause: return "UnterminatedClause";
    case DiagKind::TautologyDropped: return "TautologyDropped";
    case DiagKind::DuplicateDropped: return "DuplicateDropped";
  }
  return "Unknown";
}

struct Diagnostic {
  size_t line = 0;  // 1-based
  DiagKind kind = DiagKind::SyntaxError;
  Severity severity = Severity::Error;
  std::string message;

  std::string to_string() const {
    return "line " + std::to_string(line) + ": " +
           (severity == Severity::Error ? "error: " : "warning: ") + diag_kind_name(kind) + ": " +
           message;
  }
};

struct ParseResult {
  std::optional<Formula> formula;  // empty iff an error diagnostic is present
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return formula.has_value(); }
  const Diagnostic* first_error() const {
    for (const auto& d : diagnostics)
      if (d.severity == Severity::Error) return &d;
    return nullptr;
  }
};

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<int64_t> parse_int(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Reads DIMACS CNF restricted to clauses of width <= 3. Stops at the first
/// error; warnings (header count mismatch, dropped clauses, missing final 0)
/// are collected alongside the formula.
inline ParseResult parse_dimacs(std::string_view text) {
  ParseResult res;
  auto fail = [&](size_t line, DiagKind kind, std::string msg) {
    res.diagnostics.push_back({line, kind, Severity::Error, std::move(msg)});
    res.formula.reset();
    return res;
  };
  auto warn = [&](size_t line, DiagKind kind, std::string msg) {
    res.diagnostics.push_back({line, kind, Severity::Warning, std::move(msg)});
  };

  std::optional<FormulaBuilder> builder;
  size_t header_line = 0;
  uint64_t declared_m = 0;
  uint32_t n = 0;
  std::vector<Literal> pending;
  size_t pending_line = 0;
  size_t line_no = 0;

  auto close_clause = [&]() -> std::optional<Diagnostic> {
    try {
      auto added = builder->add(pending);
      if (added == FormulaBuilder::Added::Tautology)
        warn(pending_line, DiagKind::TautologyDropped, "tautological clause dropped");
      else if (added == FormulaBuilder::Added::Duplicate)
        warn(pending_line, DiagKind::DuplicateDropped, "duplicate clause collapsed");
    } catch (const Error& e) {
      DiagKind k = e.code() == Errc::WidthExceeded ? DiagKind::WidthExceeded : DiagKind::VarOutOfRange;
      return Diagnostic{pending_line, k, Severity::Error, e.detail()};
    }
    pending.clear();
    return std::nullopt;
  };

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    size_t first = 0;
    while (first < line.size() && detail::is_space(line[first])) ++first;
    if (first == line.size()) {
      if (eol == text.size()) break;
      continue;
    }
    char lead = line[first];
    if (lead == 'c') continue;
    if (lead == '%') break;  // SATLIB end marker
    if (lead == 'p') {
      if (builder) return fail(line_no, DiagKind::SyntaxError, "second problem line");
      auto toks = detail::split_tokens(line.substr(first));
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "cnf")
        return fail(line_no, DiagKind::SyntaxError, "expected 'p cnf <vars> <clauses>'");
      auto nv = detail::parse_int(toks[2]);
      auto mv = detail::parse_int(toks[3]);
      if (!nv || !mv || *nv < 0 || *mv < 0)
        return fail(line_no, DiagKind::SyntaxError, "bad counts in problem line");
      if (*nv > static_cast<int64_t>(kMaxVar))
        return fail(line_no, DiagKind::VarOutOfRange, "variable count exceeds supported maximum");
      n = static_cast<uint32_t>(*nv);
      declared_m = static_cast<uint64_t>(*mv);
      header_line = line_no;
      builder.emplace(n);
      continue;
    }
    for (auto tok : detail::split_tokens(line.substr(first))) {
      auto v = detail::parse_int(tok);
      if (!v) return fail(line_no, DiagKind::SyntaxError, "malformed token '" + std::string(tok.substr(0, 32)) + "'");
      if (!builder) return fail(line_no, DiagKind::MissingHeader, "clause data before problem line");
      if (*v == 0) {
        if (pending.empty()) pending_line = line_no;
        if (auto err = close_clause()) {
          res.diagnostics.push_back(*err);
          return res;
        }
        continue;
      }
      if (*v > static_cast<int64_t>(n) || *v < -static_cast<int64_t>(n))
        return fail(line_no, DiagKind::VarOutOfRange,
                    "literal " + std::to_string(*v) + " outside 1.." + std::to_string(n));
      if (pending.empty()) pending_line = line_no;
      pending.push_back(from_dimacs(*v));
    }
    if (eol == text.size()) break;
  }

  if (!builder) return fail(std::max<size_t>(line_no, 1), DiagKind::MissingHeader, "no problem line");
  if (!pending.empty()) {
    warn(pending_line, DiagKind::UnterminatedClause, "last clause not terminated by 0");
    if (auto err = close_clause()) {
      res.diagnostics.push_back(*err);
      return res;
    }
  }
  Formula f = std::move(*builder).finish();
  if (f.input_clause_count() != declared_m)
    warn(header_line, DiagKind::HeaderMismatch,
         "header declares " + std::to_string(declared_m) + " clauses, found " +
             std::to_string(f.input_clause_count()));
  res.formula = std::move(f);
  return res;
}

/// Canonical DIMACS: header, then one clause per line in formula order.
/// An input empty clause is written first as a bare "0".
inline std::string write_dimacs(const Formula& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars()) + " " +
                    std::to_string(f.size() + (f.has_empty_clause() ? 1 : 0)) + "\n";
  if (f.has_empty_clause()) out += "0\n";
  for (const auto& c : f.clauses()) {
    for (auto l : c.literals()) {
      out += std::to_string(l.dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

inline std::string variable_name(Var v, uint32_t n) {
  if (n <= 26) return std::string(1, static_cast<char>('A' + v.id - 1));
  return "x" + std::to_string(v.id);
}

inline std::string format_literal(Literal l, uint32_t n) {
  return (l.negated() ? "!" : "") + variable_name(l.var(), n);
}

inline std::string format_clause(const ClauseLits& c, uint32_t n) {
  std::string s = "(";
  for (size_t i = 0; i < c.width(); ++i) {
    if (i) s += '+';
    s += format_literal(c[i], n);
  }
  return s + ")";
}

/// Human-readable product notation, e.g. "(A+B).(!C)". Letters are used when
/// n <= 26, otherwise x1, x2, ...
inline std::string format_product_notation(const Formula& f) {
  std::string s;
  if (f.has_empty_clause()) s = "()";
  for (const auto& c : f.clauses()) {
    if (!s.empty()) s += '.';
    s += format_clause(c.lits(), f.num_vars());
  }
  return s;
}

}  // namespace sortsweep

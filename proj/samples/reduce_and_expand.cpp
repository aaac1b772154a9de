// Reduces a small formula, prints the rewrite trace and the first few
// satisfying expansion branches.

#include <iostream>

#include "sortsweep/sortsweep.hpp"

int main() {
  using namespace sortsweep;
  // (A+B+C).(!A+B+C).(!B+D).(C+!D)
  Formula f = formula_from_dimacs(4, {{1, 2, 3}, {-1, 2, 3}, {-2, 4}, {3, -4}});
  std::cout << "input:       " << format_product_notation(f) << "\n";

  auto [form, trace] = reduce_to_fixpoint(f, ReduceConfig{});
  std::cout << trace_to_text(trace);
  std::cout << "irreducible: " << format_product_notation(form.formula()) << " (" << status_name(form.status())
            << ")\n";
  if (form.status() == ReduceStatus::ContradictionFound) return 0;

  auto s = expand(form, 5);
  for (const auto& a : s.assignments) std::cout << format_value_line(a) << "\n";
  return 0;
}

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tanhops/test_function.hpp"

namespace tanhops {

struct CorpusEntry {
  TestFunction function;
  bool bounded_derivatives = false;
  bool polynomial = false;
  bool has_caputo_closed_form = false;
  // Flat point: derivatives 1..vanishing_order vanish at *vanishing_at.
  std::optional<double> vanishing_at;
  int vanishing_order = 0;
};

// The registry every experiment draws from. Includes sin, cos, exp(-t^2),
// 1/(1+t^2), the monomials t..t^3, the flat-at-zero family t^{N+1} exp(-t^2),
// and integer powers (t-a)^p with their Caputo closed forms. Derivatives are
// exact up to order 6.
const std::vector<CorpusEntry>& standard_corpus();

// Lookup by name; nullptr when absent.
const CorpusEntry* find_entry(std::string_view name);

// (t - a)^p for integer p >= 1, with the analytic left Caputo derivative
// anchored at a: zero when p < ceil(alpha), else
// Gamma(p+1)/Gamma(p-alpha+1) (t-a)^{p-alpha}.
TestFunction power_function(int p, double a);

}  // namespace tanhops

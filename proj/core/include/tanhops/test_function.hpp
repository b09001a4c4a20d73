#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tanhops/errors.hpp"

namespace tanhops {

// A scalar function with hand-coded analytic derivatives, and optionally a
// closed-form left Caputo derivative. Derivatives are exact closed forms,
// never numeric: the Voronovskaya residual subtracts f^(j)(x)/j! terms and
// any noise there pollutes the measured rates.
struct TestFunction {
  std::string name;
  std::function<double(double)> eval;
  // derivs[j-1] is the j-th derivative, j = 1..max_order().
  std::vector<std::function<double(double)>> derivs;
  // Analytic left Caputo derivative (alpha, anchor, t) -> D_{*anchor}^alpha f(t),
  // when a closed form exists.
  std::function<double(double, double, double)> caputo;
  std::optional<double> sup_norm_dN;

  int max_order() const { return static_cast<int>(derivs.size()); }

  bool has_derivative(int j) const { return j >= 0 && j <= max_order(); }

  // j = 0 returns eval itself.
  const std::function<double(double)>& derivative(int j) const {
    if (j == 0) return eval;
    if (j < 0 || j > max_order()) {
      throw OrderUnavailable("TestFunction '" + name + "': derivative of order " +
                             std::to_string(j) + " not available");
    }
    return derivs[static_cast<std::size_t>(j - 1)];
  }
};

}  // namespace tanhops

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tanhops/fractional.hpp"
#include "tanhops/operators.hpp"

namespace tanhops {

struct ExpansionRow {
  int n;
  double raw_error;  // Op_n(f, x) - f(x)
  double residual;   // raw_error minus the N-term derivative correction
};

struct ExpansionReport {
  std::string function;
  OperatorKind kind = OperatorKind::basic;
  double x = 0.0;
  double beta = 0.7;
  int N = 2;
  std::vector<ExpansionRow> rows;  // sorted by n ascending
  double fitted_raw_rate = 0.0;
  double fitted_residual_rate = 0.0;
  // Slope of log|residual| against log(1/n + 1/n^beta); only filled by
  // kantorovich_rate_check.
  std::optional<double> fitted_composite_slope;
};

struct StabilityRow {
  double delta;
  double difference;  // |C_n(f, x; 1+delta) - C_n(f, x; 1)|
};

struct StabilityReport {
  std::string function;
  double x = 0.0;
  int n = 0;
  std::vector<StabilityRow> rows;  // deltas ascending
  double fitted_slope_in_delta = 0.0;
};

struct VoronovskayaResult {
  double raw_error;
  double residual;
  bool radius_capped;
};

// raw_error = Op_n(f, x) - f(x);
// residual  = raw_error - sum_{j=1}^N f^(j)(x)/j! * moment(j, x),
// both over the same truncation window.
VoronovskayaResult voronovskaya_residual(const ActivationParams& p, const OperatorSpec& spec,
                                         const TestFunction& f, double x, int N);

// Minus the least-squares slope of log|value| against log n, so a positive
// return means decay of that order. Rows with |value| <= 1e-14 are dropped
// as accumulation noise; throws InsufficientData below 3 usable rows.
double rate_fit(const std::vector<std::pair<double, double>>& rows);

// Least-squares slope of log|y| against log x over usable rows.
double loglog_slope(const std::vector<std::pair<double, double>>& rows);

// Perturbs q away from 1 and measures |C_n(f,x;1+delta) - C_n(f,x;1)|.
// Runs on the plain density kernel: the symmetrized kernel satisfies
// Phi(q) = Phi(1/q), so its first-order response at q = 1 vanishes and only
// the density exposes the linear-in-delta behavior.
// Requires p_base.q == 1 and deltas in (0, 0.5).
StabilityReport stability_sweep(const ActivationParams& p_base, const OperatorSpec& spec,
                                const TestFunction& f, double x,
                                const std::vector<double>& deltas);

struct DamasclinResult {
  double value;
  bool window_too_small;  // advisory: integrand still significant at the window edge
};

// The fractional correction term
//   (1/Gamma(alpha)) int_x^{x+window} (D_{*x}^a f(t) - D_{*x}^a f(x))
//                                     (t-x)^{a-1} / n^{beta(N-eps)} dt
// with the singular factor handled by the substitution u = (t-x)^alpha.
// Uses the function's analytic Caputo derivative when available, else the
// product-quadrature scheme.
DamasclinResult damasclin_correction(const ActivationParams& p, const OperatorSpec& spec,
                                     const TestFunction& f, const FractionalOrder& order,
                                     double x, double beta, double eps,
                                     const CaputoScheme& scheme, double window);

// Runs voronovskaya_residual with the Kantorovich operator across ns and fits
// the residual both against log n and against log(1/n + 1/n^beta).
ExpansionReport kantorovich_rate_check(const ActivationParams& p, const TestFunction& f,
                                       double x, int N, double beta, double eps,
                                       const std::vector<int>& ns);

}  // namespace tanhops

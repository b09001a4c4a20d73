#pragma once

#include <vector>

#include "tanhops/kernel.hpp"
#include "tanhops/test_function.hpp"

namespace tanhops {

enum class OperatorKind { basic, kantorovich, quadrature };

// Which lattice weight the operator sums against. The symmetrized kernel is
// the default; the plain density is needed for q-perturbation sweeps, where
// symmetrization makes q = 1 a stationary point and hides the first-order
// response.
enum class KernelChoice { symmetrized, density };

struct OperatorSpec {
  OperatorKind kind = OperatorKind::basic;
  int n = 32;
  int inner_quadrature_points = 8;                       // Gauss nodes per Kantorovich cell
  std::vector<double> quad_weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  KernelEvalPolicy policy;
  KernelChoice kernel = KernelChoice::symmetrized;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct OperatorResult {
  double value;
  bool radius_capped;  // advisory from kernel_decay_radius
};

// B_n(f, x) = sum_k f(k/n) Phi(nx - k), truncated at the kernel decay radius.
OperatorResult apply_basic(const ActivationParams& p, const OperatorSpec& spec,
                           const TestFunction& f, double x);

// C_n(f, x) = sum_k (n * integral_0^{1/n} f(t + k/n) dt) Phi(nx - k);
// the cell integral uses Gauss-Legendre with spec.inner_quadrature_points nodes.
OperatorResult apply_kantorovich(const ActivationParams& p, const OperatorSpec& spec,
                                 const TestFunction& f, double x);

// Q_n(f, x) = sum_k delta_k(f) Phi(nx - k) with
// delta_k(f) = sum_{r=1}^{theta} w_r f(k/n + r/(n theta)), theta = #weights.
OperatorResult apply_quadrature(const ActivationParams& p, const OperatorSpec& spec,
                                const TestFunction& f, double x);

// Dispatch on spec.kind.
OperatorResult apply(const ActivationParams& p, const OperatorSpec& spec,
                     const TestFunction& f, double x);

// The operator of spec.kind applied to t -> (t - x)^j, evaluated at x.
// Throws OrderTooHigh for j > 12.
OperatorResult moment(const ActivationParams& p, const OperatorSpec& spec, int j, double x);

}  // namespace tanhops

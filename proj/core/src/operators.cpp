#include "tanhops/operators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tanhops/quadrature.hpp"

namespace tanhops {
namespace {

// Neumaier-compensated accumulator; the shifted-monomial sums alternate in
// sign around x and lose the cancellation structure under naive summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double kernel_value(const ActivationParams& p, KernelChoice choice, double z) {
  return choice == KernelChoice::symmetrized ? symmetrized_kernel(p, z) : density(p, z);
}

// Sums sample(k) * Phi(nx - k) over the window |k - n*x| <= R.
template <typename Sample>
OperatorResult lattice_sum(const ActivationParams& p, const OperatorSpec& spec, double x,
                           Sample&& sample) {
  const DecayRadius radius = kernel_decay_radius(p, spec.policy);
  const double nx = static_cast<double>(spec.n) * x;
  const long kmin = static_cast<long>(std::ceil(nx - radius.radius));
  const long kmax = static_cast<long>(std::floor(nx + radius.radius));
  CompensatedSum acc;
  for (long k = kmin; k <= kmax; ++k) {
    const double phi = kernel_value(p, spec.kernel, nx - static_cast<double>(k));
    acc.add(sample(k) * phi);
  }
  return {acc.value(), radius.capped};
}

}  // namespace

void OperatorSpec::validate() const {
  if (n < 1) throw std::invalid_argument("OperatorSpec: n must be >= 1");
  if (inner_quadrature_points < 2) {
    throw std::invalid_argument("OperatorSpec: inner_quadrature_points must be >= 2");
  }
  if (quad_weights.empty()) {
    throw std::invalid_argument("OperatorSpec: quad_weights must be nonempty");
  }
  double sum = 0.0;
  for (double w : quad_weights) {
    if (w < 0.0) throw std::invalid_argument("OperatorSpec: quad_weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("OperatorSpec: quad_weights must sum to 1");
  }
}

OperatorResult apply_basic(const ActivationParams& p, const OperatorSpec& spec,
                           const TestFunction& f, double x) {
  spec.validate();
  const double n = static_cast<double>(spec.n);
  return lattice_sum(p, spec, x,
                     [&](long k) { return f.eval(static_cast<double>(k) / n); });
}

OperatorResult apply_kantorovich(const ActivationParams& p, const OperatorSpec& spec,
                                 const TestFunction& f, double x) {
  spec.validate();
  const double n = static_cast<double>(spec.n);
  const GaussRule rule = gauss_legendre(spec.inner_quadrature_points);
  // Nodes and weights mapped to [0, 1/n]; the n-prefactor turns the cell
  // integral into a convex average, so mapped weights sum to 1.
  std::vector<double> t(rule.nodes.size());
  std::vector<double> w(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    t[i] = 0.5 * (rule.nodes[i] + 1.0) / n;
    w[i] = 0.5 * rule.weights[i];
  }
  return lattice_sum(p, spec, x, [&](long k) {
    const double base = static_cast<double>(k) / n;
    double avg = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) avg += w[i] * f.eval(base + t[i]);
    return avg;
  });
}

OperatorResult apply_quadrature(const ActivationParams& p, const OperatorSpec& spec,
                                const TestFunction& f, double x) {
  spec.validate();
  const double n = static_cast<double>(spec.n);
  const double theta = static_cast<double>(spec.quad_weights.size());
  return lattice_sum(p, spec, x, [&](long k) {
    const double base = static_cast<double>(k) / n;
    double acc = 0.0;
    for (std::size_t r = 0; r < spec.quad_weights.size(); ++r) {
      acc += spec.quad_weights[r] * f.eval(base + static_cast<double>(r + 1) / (n * theta));
    }
    return acc;
  });
}

OperatorResult apply(const ActivationParams& p, const OperatorSpec& spec,
                     const TestFunction& f, double x) {
  switch (spec.kind) {
    case OperatorKind::basic:
      return apply_basic(p, spec, f, x);
    case OperatorKind::kantorovich:
      return apply_kantorovich(p, spec, f, x);
    case OperatorKind::quadrature:
      return apply_quadrature(p, spec, f, x);
  }
  throw std::invalid_argument("apply: unknown operator kind");
}

OperatorResult moment(const ActivationParams& p, const OperatorSpec& spec, int j, double x) {
  if (j < 0) throw std::invalid_argument("moment: j must be >= 0");
  if (j > 12) {
    throw OrderTooHigh("moment: order " + std::to_string(j) +
                       " exceeds 12 (catastrophic cancellation guard)");
  }
  TestFunction monomial;
  monomial.name = "shifted-monomial";
  monomial.eval = [j, x](double t) { return std::pow(t - x, j); };
  return apply(p, spec, monomial, x);
}

}  // namespace tanhops

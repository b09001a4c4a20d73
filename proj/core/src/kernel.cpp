#include "tanhops/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tanhops {
namespace {

// Stable building blocks. For x >= 0 work with t = e^{-2 lambda x} in [0, 1];
// for x < 0 with s = e^{2 lambda x}. Neither can overflow.

double activation_impl(double q, double lambda, double x) {
  if (x >= 0.0) {
    const double t = std::exp(-2.0 * lambda * x);
    return (1.0 - q * t) / (1.0 + q * t);
  }
  const double s = std::exp(2.0 * lambda * x);
  return (s - q) / (s + q);
}

// 1 - g^2 = 4 q e^{-2 lambda x} / (1 + q e^{-2 lambda x})^2, computed without
// the cancellation of literally squaring g.
double one_minus_g_sq(double q, double lambda, double x) {
  if (x >= 0.0) {
    const double t = std::exp(-2.0 * lambda * x);
    const double d = 1.0 + q * t;
    return 4.0 * q * t / (d * d);
  }
  const double s = std::exp(2.0 * lambda * x);
  const double d = s + q;
  return 4.0 * q * s / (d * d);
}

double activation_dq_impl(double q, double lambda, double x) {
  // dg/dq = -2 / (e^{lx} + q e^{-lx})^2
  if (x >= 0.0) {
    const double t = std::exp(-2.0 * lambda * x);
    const double d = 1.0 + q * t;
    return -2.0 * t / (d * d);
  }
  const double s = std::exp(2.0 * lambda * x);
  const double d = s + q;
  return -2.0 * s / (d * d);
}

double density_impl(double q, double lambda, double x) {
  // Mirror symmetry M_q(-x) = M_{1/q}(x) keeps everything on x >= 0.
  if (x < 0.0) return density_impl(1.0 / q, lambda, -x);
  if (x < 1.0) {
    // both activations are O(1) apart here; the plain difference is fine
    return 0.25 * (activation_impl(q, lambda, x + 1.0) - activation_impl(q, lambda, x - 1.0));
  }
  // In the tail both activations round to 1 and their difference cancels to
  // zero. Algebraically g(x+1) - g(x-1) = 2q(v - u) / ((1+qu)(1+qv)) with
  // u = e^{-2l(x+1)}, v = e^{-2l(x-1)}, which stays positive all the way down
  // to the underflow limit.
  const double v = std::exp(-2.0 * lambda * (x - 1.0));
  const double u = v * std::exp(-4.0 * lambda);
  const double diff = v * (-std::expm1(-4.0 * lambda));
  return 0.5 * q * diff / ((1.0 + q * u) * (1.0 + q * v));
}

}  // namespace

ActivationParams::ActivationParams(double q_, double lambda_) : q(q_), lambda(lambda_) {
  if (!(q > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("ActivationParams: q and lambda must be positive");
  }
}

KernelEvalPolicy::KernelEvalPolicy(double truncation_tol_, int max_radius_)
    : truncation_tol(truncation_tol_), max_radius(max_radius_) {
  if (!(truncation_tol > 0.0 && truncation_tol < 1.0)) {
    throw std::invalid_argument("KernelEvalPolicy: truncation_tol must lie in (0, 1)");
  }
  if (max_radius < 4) {
    throw std::invalid_argument("KernelEvalPolicy: max_radius must be >= 4");
  }
}

double activation(const ActivationParams& p, double x) {
  return activation_impl(p.q, p.lambda, x);
}

double activation_dx(const ActivationParams& p, double x) {
  return p.lambda * one_minus_g_sq(p.q, p.lambda, x);
}

double activation_dxx(const ActivationParams& p, double x) {
  return -2.0 * p.lambda * p.lambda * activation_impl(p.q, p.lambda, x) *
         one_minus_g_sq(p.q, p.lambda, x);
}

double activation_dq(const ActivationParams& p, double x) {
  return activation_dq_impl(p.q, p.lambda, x);
}

double density(const ActivationParams& p, double x) {
  return density_impl(p.q, p.lambda, x);
}

double density_dq(const ActivationParams& p, double x) {
  return 0.25 * (activation_dq_impl(p.q, p.lambda, x + 1.0) -
                 activation_dq_impl(p.q, p.lambda, x - 1.0));
}

double symmetrized_kernel(const ActivationParams& p, double x) {
  return 0.5 * (density_impl(p.q, p.lambda, x) + density_impl(1.0 / p.q, p.lambda, x));
}

double symmetrized_kernel_dq(const ActivationParams& p, double x) {
  // d/dq of the 1/q half is dM/du at u = 1/q times d(1/q)/dq = -1/q^2.
  const double direct = density_dq(p, x);
  const ActivationParams mirror(1.0 / p.q, p.lambda);
  const double chained = density_dq(mirror, x) * (-1.0 / (p.q * p.q));
  return 0.5 * (direct + chained);
}

DecayRadius kernel_decay_radius(const ActivationParams& p, const KernelEvalPolicy& policy) {
  // Phi is a mixture of two bumps whose modes sit near ln(q)/(2 lambda) and
  // -ln(q)/(2 lambda); beyond both modes (plus the unit shift in the density)
  // the tail is monotone decreasing, so an integer scan is conclusive.
  const double mode = std::abs(std::log(p.q)) / (2.0 * p.lambda);
  int start = std::max(1, static_cast<int>(std::ceil(mode)) + 1);
  start = std::min(start, policy.max_radius);
  for (int r = start; r <= policy.max_radius; ++r) {
    if (symmetrized_kernel(p, static_cast<double>(r)) < policy.truncation_tol) {
      return {r, false};
    }
  }
  return {policy.max_radius, true};
}

}  // namespace tanhops

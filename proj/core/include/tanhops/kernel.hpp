#pragma once

namespace tanhops {

// Parameters of the perturbed hyperbolic tangent family.
// q deforms (q = 1 recovers tanh), lambda sets the steepness.
struct ActivationParams {
  double q;
  double lambda;

  ActivationParams(double q, double lambda);  // throws std::invalid_argument if q or lambda <= 0
};

// Controls truncation of the infinite lattice sums. The kernel tail decays
// exponentially, so a modest radius reaches any practical tolerance.
struct KernelEvalPolicy {
  double truncation_tol = 1e-14;  // absolute kernel-value cutoff, in (0, 1)
  int max_radius = 200;           // hard cap on |k - n*x|, >= 4

  KernelEvalPolicy() = default;
  KernelEvalPolicy(double truncation_tol, int max_radius);  // validates ranges
};

// g(x) = (e^{lx} - q e^{-lx}) / (e^{lx} + q e^{-lx}); odd, strictly
// increasing, values in (-1, 1). Evaluated via e^{-2l|x|} so large |lx|
// cannot overflow.
double activation(const ActivationParams& p, double x);

// dg/dx = 4 lambda q / (e^{lx} + q e^{-lx})^2 = lambda (1 - g^2) > 0.
double activation_dx(const ActivationParams& p, double x);

// d2g/dx2 = -2 lambda^2 g (1 - g^2); changes sign at x = ln(q) / (2 lambda).
double activation_dxx(const ActivationParams& p, double x);

// dg/dq = -2 / (e^{lx} + q e^{-lx})^2 < 0.
double activation_dq(const ActivationParams& p, double x);

// M(x) = (g(x+1) - g(x-1)) / 4; strictly positive, unit integral,
// partition of unity on the integer lattice.
double density(const ActivationParams& p, double x);

// dM/dq at fixed x.
double density_dq(const ActivationParams& p, double x);

// Phi(x) = (M_q(x) + M_{1/q}(x)) / 2; even, strictly positive.
double symmetrized_kernel(const ActivationParams& p, double x);

// dPhi/dq; the 1/q branch enters with weight -1/q^2. Vanishes at q = 1
// since Phi(q) = Phi(1/q).
double symmetrized_kernel_dq(const ActivationParams& p, double x);

struct DecayRadius {
  int radius;
  bool capped;  // non-fatal advisory: max_radius bound before the tolerance was reached
};

// Smallest integer R <= max_radius with Phi(z) < truncation_tol for all
// |z| >= R. Scans outward from the kernel mode; the tail is monotone there.
DecayRadius kernel_decay_radius(const ActivationParams& p, const KernelEvalPolicy& policy);

}  // namespace tanhops

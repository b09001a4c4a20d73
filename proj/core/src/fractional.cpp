#include "tanhops/fractional.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tanhops/quadrature.hpp"

namespace tanhops {
namespace {

// int w^{mu-1} (c0 + c1 w) dw over [w1, w2], the exact cell integral of the
// singular weight against a linear-in-w factor.
double weighted_cell(double mu, double w1, double w2, double c0, double c1) {
  const double a = (std::pow(w2, mu) - std::pow(w1, mu)) / mu;
  const double b = (std::pow(w2, mu + 1.0) - std::pow(w1, mu + 1.0)) / (mu + 1.0);
  return c0 * a + c1 * b;
}

const std::function<double(double)>& nth_derivative(const TestFunction& f, int N) {
  if (!f.has_derivative(N)) {
    throw OrderUnavailable("caputo: function '" + f.name + "' lacks derivative of order " +
                           std::to_string(N));
  }
  return f.derivative(N);
}

}  // namespace

FractionalOrder::FractionalOrder(double alpha_) : alpha(alpha_) {
  if (!(alpha > 0.0)) throw std::invalid_argument("FractionalOrder: alpha must be positive");
  if (alpha == std::floor(alpha)) {
    throw std::invalid_argument("FractionalOrder: alpha must not be an integer");
  }
  N = static_cast<int>(std::ceil(alpha));
}

CaputoScheme::CaputoScheme(int mesh_points_, double grading_exponent_)
    : mesh_points(mesh_points_), grading_exponent(grading_exponent_) {
  if (mesh_points < 16) throw std::invalid_argument("CaputoScheme: mesh_points must be >= 16");
  if (grading_exponent < 1.0) {
    throw std::invalid_argument("CaputoScheme: grading_exponent must be >= 1");
  }
}

double caputo_left(const TestFunction& f, const FractionalOrder& order, double anchor,
                   double t, const CaputoScheme& scheme) {
  if (t < anchor) throw DomainError("caputo_left: t must be >= anchor");
  const auto& fN = nth_derivative(f, order.N);
  const double L = t - anchor;
  if (L == 0.0) return 0.0;

  const double mu = static_cast<double>(order.N) - order.alpha;  // in (0, 1)
  const int m = scheme.mesh_points;
  // Nodes graded toward the singularity at s = t; w = t - s.
  // w_i = L ((m-i)/m)^gamma runs from L down to 0 as i goes 0..m.
  double total = 0.0;
  double w_hi = L;
  double f_hi = fN(anchor);  // s = t - w_hi = anchor
  for (int i = 1; i <= m; ++i) {
    const double frac = static_cast<double>(m - i) / m;
    const double w_lo = L * std::pow(frac, scheme.grading_exponent);
    const double f_lo = fN(t - w_lo);
    // f^(N)(s) linear in w on the cell: c0 + c1 w with matching endpoints.
    const double c1 = (f_hi - f_lo) / (w_hi - w_lo);
    const double c0 = f_lo - c1 * w_lo;
    total += weighted_cell(mu, w_lo, w_hi, c0, c1);
    w_hi = w_lo;
    f_hi = f_lo;
  }
  return total / std::tgamma(mu);
}

double caputo_right(const TestFunction& f, const FractionalOrder& order, double anchor,
                    double t, const CaputoScheme& scheme) {
  if (t > anchor) throw DomainError("caputo_right: t must be <= anchor");
  const auto& fN = nth_derivative(f, order.N);
  const double L = anchor - t;
  if (L == 0.0) return 0.0;

  const double mu = static_cast<double>(order.N) - order.alpha;
  const int m = scheme.mesh_points;
  const double sign = (order.N % 2 == 0) ? 1.0 : -1.0;
  // w = s - t, singular at w = 0; graded nodes w_i = L (i/m)^gamma.
  double total = 0.0;
  double w_lo = 0.0;
  double f_lo = fN(t);
  for (int i = 1; i <= m; ++i) {
    const double frac = static_cast<double>(i) / m;
    const double w_hi = L * std::pow(frac, scheme.grading_exponent);
    const double f_hi = fN(t + w_hi);
    const double c1 = (f_hi - f_lo) / (w_hi - w_lo);
    const double c0 = f_lo - c1 * w_lo;
    total += weighted_cell(mu, w_lo, w_hi, c0, c1);
    w_lo = w_hi;
    f_lo = f_hi;
  }
  return sign * total / std::tgamma(mu);
}

double fractional_remainder(const TestFunction& f, const FractionalOrder& order,
                            double x, double y) {
  if (!f.has_derivative(order.N)) {
    throw OrderUnavailable("fractional_remainder: function '" + f.name +
                           "' lacks derivative of order " + std::to_string(order.N));
  }
  double taylor = 0.0;
  double term = 1.0;  // (y-x)^j / j!
  for (int j = 0; j <= order.N - 1; ++j) {
    if (j > 0) term *= (y - x) / j;
    taylor += f.derivative(j)(x) * term;
  }
  return f.eval(y) - taylor;
}

double fractional_remainder_integral(const TestFunction& f, const FractionalOrder& order,
                                     double x, double y, const CaputoScheme& scheme) {
  if (y == x) return 0.0;
  const double alpha = order.alpha;
  if (y > x) {
    // (1/Gamma(a)) int_x^y (y-t)^{a-1} D_{*x}^a f(t) dt; u = (y-t)^a makes the
    // weight times the Jacobian exactly 1/alpha.
    const double U = std::pow(y - x, alpha);
    const auto integrand = [&](double u) {
      const double t = y - std::pow(u, 1.0 / alpha);
      return caputo_left(f, order, x, std::min(t, y), scheme);
    };
    return integrate(integrand, 0.0, U, 24, 12) / (alpha * std::tgamma(alpha));
  }
  // Mirror: (1/Gamma(a)) int_y^x (t-y)^{a-1} D_{x-}^a f(t) dt with u = (t-y)^a.
  const double U = std::pow(x - y, alpha);
  const auto integrand = [&](double u) {
    const double t = y + std::pow(u, 1.0 / alpha);
    return caputo_right(f, order, x, std::max(std::min(t, x), y), scheme);
  };
  return integrate(integrand, 0.0, U, 24, 12) / (alpha * std::tgamma(alpha));
}

}  // namespace tanhops

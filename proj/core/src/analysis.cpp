#include "tanhops/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tanhops/quadrature.hpp"

namespace tanhops {
namespace {

constexpr double kNoiseFloor = 1e-14;

double factorial(int j) {
  double f = 1.0;
  for (int k = 2; k <= j; ++k) f *= k;
  return f;
}

}  // namespace

VoronovskayaResult voronovskaya_residual(const ActivationParams& p, const OperatorSpec& spec,
                                         const TestFunction& f, double x, int N) {
  if (!f.has_derivative(N)) {
    throw OrderUnavailable("voronovskaya_residual: '" + f.name + "' lacks derivative order " +
                           std::to_string(N));
  }
  const OperatorResult op = apply(p, spec, f, x);
  const double raw = op.value - f.eval(x);
  double correction = 0.0;
  bool capped = op.radius_capped;
  for (int j = 1; j <= N; ++j) {
    const OperatorResult mj = moment(p, spec, j, x);
    capped = capped || mj.radius_capped;
    correction += f.derivative(j)(x) / factorial(j) * mj.value;
  }
  return {raw, raw - correction, capped};
}

double loglog_slope(const std::vector<std::pair<double, double>>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [x, y] : rows) {
    if (std::abs(y) > kNoiseFloor && x > 0.0) {
      pts.emplace_back(std::log(x), std::log(std::abs(y)));
    }
  }
  if (pts.size() < 3) {
    throw InsufficientData("loglog_slope: need >= 3 rows above the noise floor, have " +
                           std::to_string(pts.size()));
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [lx, ly] : pts) {
    mx += lx;
    my += ly;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [lx, ly] : pts) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  return sxy / sxx;
}

double rate_fit(const std::vector<std::pair<double, double>>& rows) {
  return -loglog_slope(rows);
}

StabilityReport stability_sweep(const ActivationParams& p_base, const OperatorSpec& spec,
                                const TestFunction& f, double x,
                                const std::vector<double>& deltas) {
  if (std::abs(p_base.q - 1.0) > 1e-14) {
    throw std::invalid_argument("stability_sweep: base parameters must have q == 1");
  }
  for (double d : deltas) {
    if (!(d >= 0.0 && d < 0.5)) {
      throw std::invalid_argument("stability_sweep: deltas must lie in [0, 0.5)");
    }
  }

  OperatorSpec density_spec = spec;
  density_spec.kernel = KernelChoice::density;

  const double base = apply(p_base, density_spec, f, x).value;
  StabilityReport report;
  report.function = f.name;
  report.x = x;
  report.n = spec.n;
  std::vector<double> sorted = deltas;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> fit_rows;
  for (double d : sorted) {
    const ActivationParams perturbed(1.0 + d, p_base.lambda);
    const double diff = std::abs(apply(perturbed, density_spec, f, x).value - base);
    report.rows.push_back({d, diff});
    if (d > 0.0) fit_rows.emplace_back(d, diff);
  }
  report.fitted_slope_in_delta = loglog_slope(fit_rows);
  return report;
}

DamasclinResult damasclin_correction(const ActivationParams& /*p*/, const OperatorSpec& spec,
                                     const TestFunction& f, const FractionalOrder& order,
                                     double x, double beta, double eps,
                                     const CaputoScheme& scheme, double window) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("damasclin_correction: beta must lie in (0, 1)");
  }
  if (!(eps > 0.0 && eps <= static_cast<double>(order.N))) {
    throw std::invalid_argument("damasclin_correction: eps must lie in (0, N]");
  }
  if (!(window > 0.0)) {
    throw std::invalid_argument("damasclin_correction: window must be positive");
  }

  const double alpha = order.alpha;
  const auto caputo_at = [&](double t) {
    if (f.caputo) return f.caputo(alpha, x, t);
    return caputo_left(f, order, x, t, scheme);
  };
  const double at_anchor = caputo_at(x);

  // u = (t-x)^alpha turns the weight times the Jacobian into 1/alpha exactly.
  const double U = std::pow(window, alpha);
  const auto integrand = [&](double u) {
    const double t = x + std::pow(u, 1.0 / alpha);
    return caputo_at(std::min(t, x + window)) - at_anchor;
  };
  // Refine by cell doubling until stable.
  double integral = integrate(integrand, 0.0, U, 8, 12);
  for (int cells = 16; cells <= 64; cells *= 2) {
    const double next = integrate(integrand, 0.0, U, cells, 12);
    const bool converged = std::abs(next - integral) <= 1e-12 * (1.0 + std::abs(next));
    integral = next;
    if (converged) break;
  }
  integral /= alpha * std::tgamma(alpha);

  const double exponent = beta * (static_cast<double>(order.N) - eps);
  const double value = integral * std::pow(static_cast<double>(spec.n), -exponent);

  const double edge = std::abs(caputo_at(x + window) - at_anchor) *
                      std::pow(window, alpha - 1.0) / std::tgamma(alpha);
  const bool advisory = edge > 1e-10 * std::abs(integral);
  return {value, advisory};
}

ExpansionReport kantorovich_rate_check(const ActivationParams& p, const TestFunction& f,
                                       double x, int N, double beta, double eps,
                                       const std::vector<int>& ns) {
  if (ns.size() < 4) {
    throw std::invalid_argument("kantorovich_rate_check: need at least 4 values of n");
  }
  if (!std::is_sorted(ns.begin(), ns.end())) {
    throw std::invalid_argument("kantorovich_rate_check: ns must be ascending");
  }
  (void)eps;  // recorded by callers; the fits themselves are epsilon-free

  ExpansionReport report;
  report.function = f.name;
  report.kind = OperatorKind::kantorovich;
  report.x = x;
  report.beta = beta;
  report.N = N;

  OperatorSpec spec;
  spec.kind = OperatorKind::kantorovich;

  std::vector<std::pair<double, double>> raw_rows, res_rows, composite_rows;
  for (int n : ns) {
    spec.n = n;
    const VoronovskayaResult r = voronovskaya_residual(p, spec, f, x, N);
    report.rows.push_back({n, r.raw_error, r.residual});
    const double dn = static_cast<double>(n);
    raw_rows.emplace_back(dn, r.raw_error);
    res_rows.emplace_back(dn, r.residual);
    composite_rows.emplace_back(1.0 / dn + std::pow(dn, -beta), r.residual);
  }
  // Polynomial inputs push every residual below the noise floor; report NaN
  // fits there instead of failing the whole run.
  const auto fit_or_nan = [](const std::vector<std::pair<double, double>>& rows) {
    try {
      return rate_fit(rows);
    } catch (const InsufficientData&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  report.fitted_raw_rate = fit_or_nan(raw_rows);
  report.fitted_residual_rate = fit_or_nan(res_rows);
  try {
    // Residual shrinks with the composite scale, so the slope is positive.
    report.fitted_composite_slope = loglog_slope(composite_rows);
  } catch (const InsufficientData&) {
    report.fitted_composite_slope.reset();
  }
  return report;
}

}  // namespace tanhops

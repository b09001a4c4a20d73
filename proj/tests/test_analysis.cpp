#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <cstring>

#include "oracles.hpp"
#include "tanhops/analysis.hpp"
#include "tanhops/corpus.hpp"

using namespace tanhops;

TEST_CASE("rate_fit on synthetic rows") {
  CHECK(rate_fit({{10.0, 1e-1}, {100.0, 1e-2}, {1000.0, 1e-3}}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rate_fit({{10.0, 5.0}, {100.0, 5.0}, {1000.0, 5.0}}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // noise-floor rows are discarded, leaving too few points
  CHECK_THROWS_AS((rate_fit({{10.0, 1e-1}, {100.0, 1e-15}, {1000.0, 1e-16}})),
                  InsufficientData);
}

TEST_CASE("voronovskaya residual on polynomials is truncation noise") {
  const ActivationParams p(1, 1);
  for (const char* name : {"poly1", "poly2"}) {
    const CorpusEntry* e = find_entry(name);
    for (int n : {8, 64, 1024}) {
      OperatorSpec spec;
      spec.n = n;
      const VoronovskayaResult r = voronovskaya_residual(p, spec, e->function, 0.4, 2);
      CHECK_MESSAGE(std::abs(r.residual) < 1e-9, name << " n=" << n);
    }
  }
}

TEST_CASE("flat point makes residual and raw error identical") {
  const CorpusEntry* e = find_entry("flat2");
  REQUIRE(e != nullptr);
  const ActivationParams p(1, 1);
  OperatorSpec spec;
  spec.n = 32;
  const VoronovskayaResult r = voronovskaya_residual(p, spec, e->function, 0.0, 2);
  // the correction sum is exactly zero, so the two agree bit for bit
  CHECK(std::memcmp(&r.raw_error, &r.residual, sizeof(double)) == 0);
}

TEST_CASE("residual decays faster than the raw error for sin") {
  const ActivationParams p(1, 1);
  std::vector<std::pair<double, double>> raw_rows, res_rows;
  for (int n = 16; n <= 1024; n *= 2) {
    OperatorSpec spec;
    spec.n = n;
    const VoronovskayaResult r = voronovskaya_residual(p, spec, find_entry("sin")->function, 0.3, 2);
    raw_rows.emplace_back(n, r.raw_error);
    res_rows.emplace_back(n, r.residual);
  }
  const double raw_rate = rate_fit(raw_rows);
  const double res_rate = rate_fit(res_rows);
  CHECK(res_rate > raw_rate);
  CHECK(res_rate >= 0.7 * (2.0 - 0.1) - 0.25);
}

TEST_CASE("voronovskaya rejects missing derivatives") {
  TestFunction bare;
  bare.name = "bare";
  bare.eval = [](double t) { return t; };
  const ActivationParams p(1, 1);
  OperatorSpec spec;
  CHECK_THROWS_AS((voronovskaya_residual(p, spec, bare, 0.0, 2)), OrderUnavailable);
}

TEST_CASE("stability sweep") {
  const ActivationParams base(1, 1);
  OperatorSpec spec;
  spec.kind = OperatorKind::kantorovich;
  const CorpusEntry* sin_e = find_entry("sin");
  const CorpusEntry* gauss_e = find_entry("gauss");

  CHECK_THROWS_AS(
      (stability_sweep(ActivationParams(1.5, 1), spec, sin_e->function, 0.3, {0.1})),
      std::invalid_argument);
  CHECK_THROWS_AS((stability_sweep(base, spec, sin_e->function, 0.3, {0.6})),
                  std::invalid_argument);

  const std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  for (const CorpusEntry* e : {sin_e, gauss_e}) {
    for (int n : {32, 256}) {
      spec.n = n;
      const StabilityReport rep = stability_sweep(base, spec, e->function, 0.3, deltas);
      CHECK_MESSAGE(rep.fitted_slope_in_delta > 0.8,
                    e->function.name << " n=" << n << " slope=" << rep.fitted_slope_in_delta);
      CHECK(rep.fitted_slope_in_delta < 1.2);
      // rows come back ascending in delta with monotone differences
      REQUIRE(rep.rows.size() == 3);
      CHECK(rep.rows[0].delta < rep.rows[1].delta);
      CHECK(rep.rows[0].difference <= rep.rows[1].difference);
      CHECK(rep.rows[1].difference <= rep.rows[2].difference);
    }
  }

  // a zero delta contributes an exactly-zero difference row
  spec.n = 32;
  const StabilityReport z = stability_sweep(base, spec, sin_e->function, 0.3, {0.0, 1e-1, 1e-2, 1e-3});
  CHECK(z.rows.front().difference == 0.0);
}

TEST_CASE("damasclin scaling and degenerate cases") {
  const ActivationParams p(1, 1);
  const FractionalOrder order(1.5);
  const CaputoScheme scheme;
  const CorpusEntry* sin_e = find_entry("sin");
  const double beta = 0.7, eps = 0.1, window = 15.0;

  OperatorSpec spec;
  spec.n = 64;
  const DamasclinResult at64 =
      damasclin_correction(p, spec, sin_e->function, order, 0.3, beta, eps, scheme, window);
  spec.n = 128;
  const DamasclinResult at128 =
      damasclin_correction(p, spec, sin_e->function, order, 0.3, beta, eps, scheme, window);
  const double factor = std::pow(2.0, beta * (order.N - eps));
  // pure prefactor scaling; equality up to pow() rounding
  CHECK(at128.value * factor == doctest::Approx(at64.value).epsilon(1e-12));

  // degree N-1 polynomial: the Caputo derivative is constant in t
  const TestFunction lin = power_function(1, 0.0);
  spec.n = 64;
  const DamasclinResult flat =
      damasclin_correction(p, spec, lin, order, 0.3, beta, eps, scheme, window);
  CHECK(std::abs(flat.value) < 1e-8);

  CHECK_THROWS_AS((damasclin_correction(p, spec, sin_e->function, order, 0.3, 1.5, eps,
                                       scheme, window)),
                  std::invalid_argument);
  CHECK_THROWS_AS((damasclin_correction(p, spec, sin_e->function, order, 0.3, beta, 5.0,
                                       scheme, window)),
                  std::invalid_argument);
  CHECK_THROWS_AS((damasclin_correction(p, spec, sin_e->function, order, 0.3, beta, eps,
                                       scheme, -1.0)),
                  std::invalid_argument);
}

TEST_CASE("damasclin against a brute-force oracle") {
  // f(t) = (t-x)^N with alpha in (N-1, N): the Caputo derivative
  // Gamma(N+1)/Gamma(N-alpha+1) (t-x)^{N-alpha} is smooth, and the integrand
  // (D f(t) - D f(x)) (t-x)^{alpha-1} = c (t-x)^{N-1} is polynomial, so a
  // plain Riemann sum converges.
  const double x = 0.3, alpha = 1.5, beta = 0.7, eps = 0.1, window = 2.0;
  const FractionalOrder order(alpha);
  const TestFunction f = power_function(order.N, x);
  const ActivationParams p(1, 1);
  OperatorSpec spec;
  spec.n = 64;
  const DamasclinResult got =
      damasclin_correction(p, spec, f, order, x, beta, eps, CaputoScheme(), window);

  const double c = std::tgamma(order.N + 1.0) / std::tgamma(order.N - alpha + 1.0);
  const double oracle =
      oracles::riemann([&](double t) { return c * std::pow(t - x, order.N - 1); }, x,
                       x + window, 100000) /
      std::tgamma(alpha) * std::pow(64.0, -beta * (order.N - eps));
  CHECK(got.value == doctest::Approx(oracle).epsilon(1e-3));
}

TEST_CASE("kantorovich rate check") {
  const ActivationParams p(1, 1);
  const CorpusEntry* gauss_e = find_entry("gauss");
  CHECK_THROWS_AS((
      kantorovich_rate_check(p, gauss_e->function, 0.3, 2, 0.7, 0.1, {16, 32, 64})),
      std::invalid_argument);
  CHECK_THROWS_AS((
      kantorovich_rate_check(p, gauss_e->function, 0.3, 2, 0.7, 0.1, {64, 32, 128, 256})),
      std::invalid_argument);

  const ExpansionReport rep = kantorovich_rate_check(p, gauss_e->function, 0.3, 2, 0.7,
                                                     0.1, {16, 32, 64, 128, 256, 512});
  REQUIRE(rep.fitted_composite_slope.has_value());
  CHECK(*rep.fitted_composite_slope >= 2.0 - 0.1 - 0.3);
  CHECK(rep.fitted_residual_rate > rep.fitted_raw_rate);

  // polynomials of degree <= N: residuals all at truncation noise
  const ExpansionReport poly = kantorovich_rate_check(p, find_entry("poly2")->function,
                                                      0.3, 2, 0.7, 0.1, {8, 16, 32, 64});
  for (const ExpansionRow& row : poly.rows) CHECK(std::abs(row.residual) < 1e-9);

  // raw error for sin decays at roughly first order in the composite scale
  const ExpansionReport sine = kantorovich_rate_check(p, find_entry("sin")->function, 0.3,
                                                      2, 0.7, 0.1, {16, 32, 64, 128, 256});
  CHECK(sine.fitted_raw_rate < 1.5);
}

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "oracles.hpp"
#include "tanhops/corpus.hpp"
#include "tanhops/operators.hpp"

using namespace tanhops;

namespace {

TestFunction wrap(const char* name, std::function<double(double)> f) {
  TestFunction tf;
  tf.name = name;
  tf.eval = std::move(f);
  return tf;
}

}  // namespace

TEST_CASE("spec validation") {
  OperatorSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.n = 0;
  CHECK_THROWS_AS((spec.validate()), std::invalid_argument);
  spec.n = 8;
  spec.inner_quadrature_points = 1;
  CHECK_THROWS_AS((spec.validate()), std::invalid_argument);
  spec.inner_quadrature_points = 8;
  spec.quad_weights = {0.5, 0.6};
  CHECK_THROWS_AS((spec.validate()), std::invalid_argument);
  spec.quad_weights = {0.5, -0.1, 0.6};
  CHECK_THROWS_AS((spec.validate()), std::invalid_argument);
  spec.quad_weights = {};
  CHECK_THROWS_AS((spec.validate()), std::invalid_argument);
  spec.quad_weights = {0.25, 0.75};
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("constant reproduction across kinds") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> qs(0.3, 4.0), cs(-10.0, 10.0), xs(-2.0, 2.0);
  for (int trial = 0; trial < 6; ++trial) {
    const ActivationParams p(qs(rng), 1.0 + qs(rng));
    const double c = cs(rng);
    const TestFunction f = wrap("const", [c](double) { return c; });
    for (int n : {8, 64, 512}) {
      for (OperatorKind kind :
           {OperatorKind::basic, OperatorKind::kantorovich, OperatorKind::quadrature}) {
        OperatorSpec spec;
        spec.kind = kind;
        spec.n = n;
        const double got = apply(p, spec, f, xs(rng)).value;
        CHECK(got == doctest::Approx(c).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("basic operator on identity at lattice points") {
  const ActivationParams p(1, 1);
  OperatorSpec spec;
  spec.n = 32;
  const TestFunction ident = wrap("t", [](double t) { return t; });
  for (int m : {-16, 0, 5, 64}) {
    const double x = static_cast<double>(m) / 32.0;
    CHECK(apply_basic(p, spec, ident, x).value == doctest::Approx(x).epsilon(1e-10));
  }
}

TEST_CASE("basic operator self-convergence on sin") {
  const ActivationParams p(1, 1);
  const TestFunction f = wrap("sin", [](double t) { return std::sin(t); });
  const double x = 0.37, exact = std::sin(x);
  OperatorSpec spec;
  double prev = 0.0;
  for (int n : {64, 128, 256, 512}) {
    spec.n = n;
    const double err = std::abs(apply_basic(p, spec, f, x).value - exact);
    if (n > 64) CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("kantorovich shifts the identity by half a cell") {
  const ActivationParams p(2, 1.5);
  const TestFunction ident = wrap("t", [](double t) { return t; });
  for (int n : {8, 32, 100}) {
    OperatorSpec spec;
    spec.n = n;
    const double b = apply_basic(p, spec, ident, 0.41).value;
    spec.kind = OperatorKind::kantorovich;
    const double c = apply_kantorovich(p, spec, ident, 0.41).value;
    CHECK(c == doctest::Approx(b + 0.5 / n).epsilon(1e-10));
  }
}

TEST_CASE("kantorovich cell integral against a dense Riemann oracle") {
  const ActivationParams p(1, 1);
  OperatorSpec spec;
  spec.kind = OperatorKind::kantorovich;
  spec.n = 32;
  const TestFunction sq = wrap("t2", [](double t) { return t * t; });
  const double got = apply_kantorovich(p, spec, sq, 0.0).value;

  // same lattice sum, but each cell average via 1e4 midpoint samples
  const DecayRadius radius = kernel_decay_radius(p, spec.policy);
  double oracle = 0.0;
  for (int k = -radius.radius; k <= radius.radius; ++k) {
    const double avg = oracles::riemann(
        [&](double t) { return sq.eval(t + static_cast<double>(k) / 32.0); }, 0.0,
        1.0 / 32.0, 10000) * 32.0;
    oracle += avg * symmetrized_kernel(p, -static_cast<double>(k));
  }
  CHECK(got == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("kantorovich insensitive to doubling the inner rule") {
  const ActivationParams p(1.3, 0.8);
  for (const char* name : {"sin", "gauss", "runge"}) {
    const CorpusEntry* e = find_entry(name);
    REQUIRE(e != nullptr);
    OperatorSpec spec;
    spec.kind = OperatorKind::kantorovich;
    spec.n = 32;
    const double a = apply_kantorovich(p, spec, e->function, 0.4).value;
    spec.inner_quadrature_points = 16;
    const double b = apply_kantorovich(p, spec, e->function, 0.4).value;
    CHECK(std::abs(a - b) < 1e-10);
  }
}

TEST_CASE("quadrature operator with one node collapses to a shifted basic operator") {
  const ActivationParams p(2, 1);
  OperatorSpec spec;
  spec.kind = OperatorKind::quadrature;
  spec.n = 16;
  spec.quad_weights = {1.0};
  const TestFunction f = wrap("sin", [](double t) { return std::sin(t); });
  const TestFunction shifted =
      wrap("sin_shift", [](double t) { return std::sin(t + 1.0 / 16.0); });
  const double got = apply_quadrature(p, spec, f, 0.25).value;
  OperatorSpec basic;
  basic.n = 16;
  CHECK(got == doctest::Approx(apply_basic(p, basic, shifted, 0.25).value).epsilon(1e-12));
}

TEST_CASE("quadrature operator against direct summation") {
  const ActivationParams p(1, 1);
  OperatorSpec spec;
  spec.kind = OperatorKind::quadrature;
  spec.n = 16;
  spec.quad_weights = {0.5, 0.5};
  const TestFunction ident = wrap("t", [](double t) { return t; });
  const double got = apply_quadrature(p, spec, ident, 0.0).value;

  const DecayRadius radius = kernel_decay_radius(p, spec.policy);
  double oracle = 0.0;
  for (int k = -radius.radius; k <= radius.radius; ++k) {
    const double kk = static_cast<double>(k);
    const double node = 0.5 * (kk / 16.0 + 1.0 / 32.0) + 0.5 * (kk / 16.0 + 2.0 / 32.0);
    oracle += node * symmetrized_kernel(p, -kk);
  }
  CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
  // cell average of the identity sits 3/(4n) right of the lattice point here
  OperatorSpec basic;
  basic.n = 16;
  CHECK(got == doctest::Approx(apply_basic(p, basic, ident, 0.0).value + 3.0 / 64.0)
                   .epsilon(1e-10));
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  const CorpusEntry* f = find_entry("sin");
  const CorpusEntry* g = find_entry("gauss");
  REQUIRE(f != nullptr);
  REQUIRE(g != nullptr);
  for (OperatorKind kind :
       {OperatorKind::basic, OperatorKind::kantorovich, OperatorKind::quadrature}) {
    const double a = coef(rng), b = coef(rng);
    const TestFunction combo = wrap("combo", [&, a, b](double t) {
      return a * f->function.eval(t) + b * g->function.eval(t);
    });
    const ActivationParams p(1.5, 1);
    OperatorSpec spec;
    spec.kind = kind;
    spec.n = 64;
    const double lhs = apply(p, spec, combo, 0.3).value;
    const double rhs = a * apply(p, spec, f->function, 0.3).value +
                       b * apply(p, spec, g->function, 0.3).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("positivity") {
  const ActivationParams p(0.7, 2);
  const TestFunction f = wrap("pos", [](double t) { return t * t + 0.1; });
  for (OperatorKind kind :
       {OperatorKind::basic, OperatorKind::kantorovich, OperatorKind::quadrature}) {
    OperatorSpec spec;
    spec.kind = kind;
    spec.n = 16;
    CHECK(apply(p, spec, f, -1.2).value > 0.0);
  }
}

TEST_CASE("lattice translation covariance") {
  const ActivationParams p(2, 1);
  OperatorSpec spec;
  spec.n = 32;
  const TestFunction f = wrap("sin", [](double t) { return std::sin(t); });
  for (int m : {-7, 1, 12}) {
    const double shift = static_cast<double>(m) / 32.0;
    const TestFunction g = wrap("shifted", [shift](double t) { return std::sin(t - shift); });
    const double lhs = apply_basic(p, spec, g, 0.3).value;
    const double rhs = apply_basic(p, spec, f, 0.3 - shift).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("moments") {
  const ActivationParams p(1, 1);
  OperatorSpec spec;
  spec.n = 32;
  CHECK(moment(p, spec, 0, 0.37).value == doctest::Approx(1.0).epsilon(1e-10));
  // even kernel against an odd monomial at a lattice point
  CHECK(std::abs(moment(p, spec, 1, 5.0 / 32.0).value) < 1e-12);
  // second moment scales like n^{-2}
  const double m32 = moment(p, spec, 2, 0.3).value;
  spec.n = 64;
  const double m64 = moment(p, spec, 2, 0.3).value;
  CHECK(m32 / m64 == doctest::Approx(4.0).epsilon(0.05));

  CHECK_THROWS_AS((moment(p, spec, 13, 0.3)), OrderTooHigh);
}

TEST_CASE("moment matches direct summation") {
  const ActivationParams p(1.7, 1.2);
  OperatorSpec spec;
  spec.n = 24;
  const double x = 0.31;
  const DecayRadius radius = kernel_decay_radius(p, spec.policy);
  for (int j : {1, 2, 3, 4}) {
    const long kmin = static_cast<long>(std::ceil(24.0 * x - radius.radius));
    const long kmax = static_cast<long>(std::floor(24.0 * x + radius.radius));
    double oracle = 0.0;
    for (long k = kmin; k <= kmax; ++k) {
      const double t = static_cast<double>(k) / 24.0;
      oracle += std::pow(t - x, j) * symmetrized_kernel(p, 24.0 * x - static_cast<double>(k));
    }
    CHECK(moment(p, spec, j, x).value == doctest::Approx(oracle).epsilon(1e-12));
  }
}

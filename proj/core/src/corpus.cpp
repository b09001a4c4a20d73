#include "tanhops/corpus.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace tanhops {
namespace {

double poly_eval(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

// (P e^{-t^2})' = (P' - 2t P) e^{-t^2}; the whole derivative chain stays in
// the same family.
std::vector<double> gauss_step(const std::vector<double>& c) {
  std::vector<double> d = poly_derivative(c);
  d.resize(std::max(d.size(), c.size() + 1), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) d[i + 1] -= 2.0 * c[i];
  return d;
}

TestFunction gaussian_family(const std::string& name, std::vector<double> p0) {
  TestFunction f;
  f.name = name;
  std::vector<std::vector<double>> chain{std::move(p0)};
  for (int j = 1; j <= 6; ++j) chain.push_back(gauss_step(chain.back()));
  f.eval = [c = chain[0]](double t) { return poly_eval(c, t) * std::exp(-t * t); };
  for (int j = 1; j <= 6; ++j) {
    f.derivs.push_back(
        [c = chain[static_cast<std::size_t>(j)]](double t) {
          return poly_eval(c, t) * std::exp(-t * t);
        });
  }
  return f;
}

TestFunction trig(const std::string& name, int phase) {
  // phase 0 = sin, 1 = cos; j-th derivative shifts the phase by j quarters.
  TestFunction f;
  auto at = [](int ph, double t) {
    switch (ph & 3) {
      case 0: return std::sin(t);
      case 1: return std::cos(t);
      case 2: return -std::sin(t);
      default: return -std::cos(t);
    }
  };
  f.name = name;
  f.eval = [at, phase](double t) { return at(phase, t); };
  for (int j = 1; j <= 6; ++j) {
    f.derivs.push_back([at, phase, j](double t) { return at(phase + j, t); });
  }
  return f;
}

TestFunction runge() {
  // 1/(1+t^2) = Im((t-i)^{-1}); the n-th derivative is
  // (-1)^n n! Im((t-i)^{-(n+1)}) via partial fractions.
  TestFunction f;
  f.name = "runge";
  f.eval = [](double t) { return 1.0 / (1.0 + t * t); };
  for (int j = 1; j <= 6; ++j) {
    double fact = 1.0;
    for (int k = 2; k <= j; ++k) fact *= k;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    f.derivs.push_back([j, coeff = sign * fact](double t) {
      const std::complex<double> z(t, -1.0);
      return coeff * std::imag(std::pow(z, -(j + 1)));
    });
  }
  return f;
}

TestFunction monomial(const std::string& name, int p) {
  TestFunction f = power_function(p, 0.0);
  f.name = name;
  return f;
}

std::vector<CorpusEntry> build() {
  std::vector<CorpusEntry> c;

  {
    CorpusEntry e;
    e.function = trig("sin", 0);
    e.bounded_derivatives = true;
    c.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.function = trig("cos", 1);
    e.bounded_derivatives = true;
    c.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.function = gaussian_family("gauss", {1.0});
    e.bounded_derivatives = true;
    c.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.function = runge();
    e.bounded_derivatives = true;
    c.push_back(std::move(e));
  }
  for (int p = 1; p <= 3; ++p) {
    CorpusEntry e;
    e.function = monomial("poly" + std::to_string(p), p);
    e.polynomial = true;
    e.has_caputo_closed_form = true;
    c.push_back(std::move(e));
  }
  {
    // t^3 e^{-t^2}: f' and f'' vanish at 0.
    CorpusEntry e;
    e.function = gaussian_family("flat2", {0.0, 0.0, 0.0, 1.0});
    e.bounded_derivatives = true;
    e.vanishing_at = 0.0;
    e.vanishing_order = 2;
    c.push_back(std::move(e));
  }
  {
    // t^4 e^{-t^2}: f', f'', f''' vanish at 0.
    CorpusEntry e;
    e.function = gaussian_family("flat3", {0.0, 0.0, 0.0, 0.0, 1.0});
    e.bounded_derivatives = true;
    e.vanishing_at = 0.0;
    e.vanishing_order = 3;
    c.push_back(std::move(e));
  }
  return c;
}

}  // namespace

const std::vector<CorpusEntry>& standard_corpus() {
  static const std::vector<CorpusEntry> corpus = build();
  return corpus;
}

const CorpusEntry* find_entry(std::string_view name) {
  for (const CorpusEntry& e : standard_corpus()) {
    if (e.function.name == name) return &e;
  }
  return nullptr;
}

TestFunction power_function(int p, double a) {
  if (p < 1) throw std::invalid_argument("power_function: p must be >= 1");
  TestFunction f;
  f.name = "pow" + std::to_string(p);
  f.eval = [p, a](double t) { return std::pow(t - a, p); };
  for (int j = 1; j <= 6; ++j) {
    double fall = 1.0;  // p (p-1) ... (p-j+1)
    for (int k = 0; k < j; ++k) fall *= static_cast<double>(p - k);
    if (j > p) fall = 0.0;
    f.derivs.push_back([p, a, j, fall](double t) {
      return j > p ? 0.0 : fall * std::pow(t - a, p - j);
    });
  }
  f.caputo = [p, a](double alpha, double anchor, double t) {
    // Expand (t-a)^p about the anchor: (t-a)^p = sum_j C(p,j)(anchor-a)^{p-j}(t-anchor)^j.
    // Caputo annihilates the terms with j < N and hits the rest with the power rule.
    const int N = static_cast<int>(std::ceil(alpha));
    double sum = 0.0;
    double binom = 1.0;  // C(p, j)
    for (int j = 0; j <= p; ++j) {
      if (j >= N) {
        sum += binom * std::pow(anchor - a, p - j) *
               std::tgamma(j + 1.0) / std::tgamma(j - alpha + 1.0) *
               std::pow(t - anchor, j - alpha);
      }
      binom *= static_cast<double>(p - j) / static_cast<double>(j + 1);
    }
    return sum;
  };
  return f;
}

}  // namespace tanhops

#pragma once

#include <functional>
#include <vector>

namespace tanhops {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule with n points, exact for polynomials of degree 2n-1.
// Nodes are Newton-refined roots of the Legendre polynomial.
GaussRule gauss_legendre(int n);

// Composite Gauss-Legendre integral of f over [a, b] with `cells` equal cells.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int cells = 64, int points_per_cell = 16);

}  // namespace tanhops

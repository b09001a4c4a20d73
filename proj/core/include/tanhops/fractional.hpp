#pragma once

#include "tanhops/test_function.hpp"

namespace tanhops {

struct FractionalOrder {
  double alpha;
  int N;  // ceil(alpha)

  // Throws std::invalid_argument when alpha <= 0 or alpha is an integer.
  explicit FractionalOrder(double alpha);
};

// Discretization of the weakly singular Caputo integral: an L1-style product
// quadrature on a mesh graded toward the singular endpoint.
struct CaputoScheme {
  int mesh_points = 1024;         // >= 16
  double grading_exponent = 2.0;  // >= 1; 1 means uniform

  CaputoScheme() = default;
  CaputoScheme(int mesh_points, double grading_exponent);  // validates
};

// Left Caputo derivative
//   D_{*anchor}^alpha f(t) = (1/Gamma(N-alpha)) int_anchor^t (t-s)^{N-alpha-1} f^(N)(s) ds
// for t >= anchor. f^(N) is taken piecewise linear on each cell and the
// singular weight integrated exactly.
double caputo_left(const TestFunction& f, const FractionalOrder& order, double anchor,
                   double t, const CaputoScheme& scheme);

// Right Caputo derivative for t <= anchor, with the (-1)^N sign convention:
//   D_{anchor-}^alpha f(t) = ((-1)^N/Gamma(N-alpha)) int_t^anchor (s-t)^{N-alpha-1} f^(N)(s) ds
double caputo_right(const TestFunction& f, const FractionalOrder& order, double anchor,
                    double t, const CaputoScheme& scheme);

// Fractional Taylor remainder of f at y around x, as the exact difference
//   f(y) - sum_{j=0}^{N-1} f^(j)(x) (y-x)^j / j!
double fractional_remainder(const TestFunction& f, const FractionalOrder& order,
                            double x, double y);

// The same remainder in its integral form,
//   (1/Gamma(alpha)) int_x^y (y-t)^{alpha-1} D_{*x}^alpha f(t) dt
// (mirrored through caputo_right for y < x), for cross-validation against the
// direct difference. The endpoint singularity is removed by the substitution
// u = (y-t)^alpha.
double fractional_remainder_integral(const TestFunction& f, const FractionalOrder& order,
                                     double x, double y, const CaputoScheme& scheme);

}  // namespace tanhops

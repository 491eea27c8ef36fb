#pragma once

#include <functional>

#include "lcembed/common.hpp"

namespace lcembed::quad {

struct Result {
  Complex value{0.0, 0.0};
  double error = 0.0;
  bool converged = true;

  double real() const { return value.real(); }
};

// Adaptive Gauss-Kronrod (G7,K15) on [a,b]. Subdivides the worst interval
// until the summed error estimate is below rel_tol*|value| (plus a tiny
// absolute floor), or an interval reaches max_levels bisections, in which
// case converged=false and the partial value is returned. Endpoints are
// never evaluated (all K15 nodes are interior).
Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 double rel_tol = 1e-8, int max_levels = 48);

Result integrate_real(const std::function<double(double)>& f, double a,
                      double b, double rel_tol = 1e-8, int max_levels = 48);

// Integral over [a, inf): finite part on [a, b0] with b0 = max(1, 2a),
// tail mapped by x = 1/u onto (0, 1/b0].
Result integrate_to_infinity(const std::function<Complex(double)>& f, double a,
                             double rel_tol = 1e-8, int max_levels = 48);

}  // namespace lcembed::quad

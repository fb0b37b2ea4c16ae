#pragma once

#include <functional>

namespace mixmono {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // Kronrod-Gauss difference summed over the final panels
  bool converged = false;
};

// Globally adaptive 15-point Gauss-Kronrod quadrature: the panel with the
// largest error estimate is bisected until the total estimate is <= tol or
// `max_panels` is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_panels = 4096);

}  // namespace mixmono

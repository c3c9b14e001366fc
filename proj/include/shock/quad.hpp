#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace shock {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  bool converged = true;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    error += o.error;
    converged = converged && o.converged;
    return *this;
  }
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) on [a, b].
QuadResult integrate(const Integrand& f, double a, double b, double abs_tol = 1e-10,
                     double rel_tol = 1e-8, int max_depth = 20);

// Integral over a union of windows [lo_i, hi_i]; overlaps are merged first.
QuadResult integrate_windows(const Integrand& f,
                             std::vector<std::pair<double, double>> windows,
                             double abs_tol = 1e-10, double rel_tol = 1e-8);

// Time integral over [0, t] of an integrand with integrable endpoint
// singularities up to s^{-1/2} and (t-s)^{-1/2}: splits at t/2 and applies the
// substitutions s = u^2 and t - s = u^2, which smooth the integrand.
QuadResult integrate_time_singular(const Integrand& f, double t, double abs_tol = 1e-10,
                                   double rel_tol = 1e-8);

}  // namespace shock

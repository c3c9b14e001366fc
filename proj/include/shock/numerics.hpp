#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace shock {

// Result of an ordinary least-squares line fit y ~ intercept + slope*x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // standard error of the slope
  std::size_t count = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Composite trapezoid rule on a uniform grid with spacing h.
double trapezoid(std::span<const double> values, double h);

// Cubic (4-point Lagrange) interpolation of uniformly sampled data.
// x0 is the coordinate of sample 0, h the spacing. Clamps the stencil at the
// ends; the query point itself must lie inside [x0, x0 + (n-1)h].
double interp_cubic(std::span<const double> values, double x0, double h, double x);

// Five-point fourth-order first derivative of uniformly sampled data
// (one-sided stencils at the boundary).
std::vector<double> derivative_5pt(std::span<const double> values, double h);

// Solves tridiagonal systems with fixed coefficients. Factor once, solve many.
class TridiagonalSolver {
 public:
  TridiagonalSolver() = default;
  // lower/diag/upper have sizes n-1, n, n-1.
  TridiagonalSolver(std::vector<double> lower, std::vector<double> diag,
                    std::vector<double> upper);

  // Solves in place; rhs.size() == n.
  void solve(std::span<double> rhs) const;
  std::size_t size() const { return diag_.size(); }

 private:
  std::vector<double> lower_, diag_, upper_;  // after factorization
};

}  // namespace shock

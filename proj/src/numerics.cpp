#include "shock/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace shock {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  LineFit fit;
  fit.count = x.size();
  if (x.size() < 2) return fit;

  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += r * r;
    }
    fit.slope_stderr = std::sqrt(ss_res / (n - 2.0) / sxx);
  }
  return fit;
}

double trapezoid(std::span<const double> values, double h) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * h;
}

double interp_cubic(std::span<const double> values, double x0, double h, double x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
  assert(n >= 4);
  const double s = (x - x0) / h;
  // Stencil {i0, .., i0+3} chosen so the query sits between the middle nodes.
  std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
  i0 = std::clamp<std::ptrdiff_t>(i0, 0, n - 4);
  const double u = s - static_cast<double>(i0);  // in node units from i0
  // Lagrange basis on nodes {0,1,2,3}.
  const double c0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
  const double c1 = u * (u - 2) * (u - 3) / 2.0;
  const double c2 = -u * (u - 1) * (u - 3) / 2.0;
  const double c3 = u * (u - 1) * (u - 2) / 6.0;
  return c0 * values[i0] + c1 * values[i0 + 1] + c2 * values[i0 + 2] + c3 * values[i0 + 3];
}

std::vector<double> derivative_5pt(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  assert(n >= 5);
  std::vector<double> d(n);
  const double ih = 1.0 / h;
  auto v = [&](std::size_t i) { return values[i]; };
  d[0] = (-25 * v(0) + 48 * v(1) - 36 * v(2) + 16 * v(3) - 3 * v(4)) / 12.0 * ih;
  d[1] = (-3 * v(0) - 10 * v(1) + 18 * v(2) - 6 * v(3) + v(4)) / 12.0 * ih;
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (v(i - 2) - 8 * v(i - 1) + 8 * v(i + 1) - v(i + 2)) / 12.0 * ih;
  d[n - 2] = (3 * v(n - 1) + 10 * v(n - 2) - 18 * v(n - 3) + 6 * v(n - 4) - v(n - 5)) / 12.0 * ih;
  d[n - 1] = (25 * v(n - 1) - 48 * v(n - 2) + 36 * v(n - 3) - 16 * v(n - 4) + 3 * v(n - 5)) / 12.0 * ih;
  return d;
}

TridiagonalSolver::TridiagonalSolver(std::vector<double> lower, std::vector<double> diag,
                                     std::vector<double> upper)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)) {
  const std::size_t n = diag_.size();
  if (lower_.size() + 1 != n || upper_.size() + 1 != n)
    throw std::invalid_argument("TridiagonalSolver: inconsistent band sizes");
  // LU factorization without pivoting (diagonally dominant systems only).
  for (std::size_t i = 1; i < n; ++i) {
    lower_[i - 1] /= diag_[i - 1];
    diag_[i] -= lower_[i - 1] * upper_[i - 1];
  }
}

void TridiagonalSolver::solve(std::span<double> rhs) const {
  const std::size_t n = diag_.size();
  assert(rhs.size() == n);
  for (std::size_t i = 1; i < n; ++i) rhs[i] -= lower_[i - 1] * rhs[i - 1];
  rhs[n - 1] /= diag_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper_[i] * rhs[i + 1]) / diag_[i];
}

}  // namespace shock

#pragma once

// Test-only brute-force oracle: direct finite-difference integration of the
// scalar convected Burgers equation phi_tau = beta phi_xixi - gamma (phi^2)_xi
// in the self-similar frame, started from a narrow Gaussian of prescribed
// mass. Independent of the closed-form evaluation it is used to check.

#include <cmath>
#include <vector>

namespace shock_test {

struct OracleSolution {
  std::vector<double> xi;
  std::vector<double> phi;
};

inline OracleSolution integrate_burgers_wave(double beta, double gamma, double mass,
                                             double tau_start, double tau_end, double sigma0,
                                             double half_width = 25.0, double h = 0.02) {
  const int n = static_cast<int>(std::round(2.0 * half_width / h)) + 1;
  OracleSolution sol;
  sol.xi.resize(n);
  sol.phi.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    sol.xi[i] = -half_width + i * h;
    sol.phi[i] = std::exp(-sol.xi[i] * sol.xi[i] / (2.0 * sigma0 * sigma0)) /
                 (sigma0 * std::sqrt(2.0 * 3.14159265358979323846));
  }
  // Normalize the discrete mass exactly; the narrow start is under-resolved.
  double m0 = 0.5 * (sol.phi.front() + sol.phi.back());
  for (int i = 1; i + 1 < n; ++i) m0 += sol.phi[i];
  m0 *= h;
  for (double& v : sol.phi) v *= mass / m0;

  std::vector<double> lower(n - 3), diag(n - 2), upper(n - 3), rhs(n - 2);
  std::vector<double> work(n);
  double tau = tau_start;
  double dt_cached = -1.0;
  // Prefactored Thomas data rebuilt only when dt changes.
  std::vector<double> fac_l, fac_d, fac_u;
  auto refactor = [&](double dt) {
    const double r = beta * dt / (2.0 * h * h);
    fac_l.assign(n - 3, -r);
    fac_d.assign(n - 2, 1.0 + 2.0 * r);
    fac_u.assign(n - 3, -r);
    for (int i = 1; i < n - 2; ++i) {
      fac_l[i - 1] /= fac_d[i - 1];
      fac_d[i] -= fac_l[i - 1] * fac_u[i - 1];
    }
    dt_cached = dt;
  };

  while (tau < tau_end - 1e-12) {
    // Ramped step: accuracy near the point source, speed later.
    double dt = (tau < 0.1) ? 2e-4 : (tau < 1.0 ? 2e-3 : 5e-3);
    dt = std::min(dt, tau_end - tau);
    if (dt != dt_cached) refactor(dt);
    const double r = beta * dt / (2.0 * h * h);
    for (int i = 1; i + 1 < n; ++i) {
      const double fp = gamma * sol.phi[i + 1] * sol.phi[i + 1];
      const double fm = gamma * sol.phi[i - 1] * sol.phi[i - 1];
      const double conv = 0.5 * (fp - fm) / h;
      const double diff = sol.phi[i + 1] - 2.0 * sol.phi[i] + sol.phi[i - 1];
      rhs[i - 1] = sol.phi[i] + dt * (-conv) + r * diff;
    }
    // Dirichlet zero ends; solve (I - r L) phi_new = rhs.
    for (int i = 1; i < n - 2; ++i) rhs[i] -= fac_l[i - 1] * rhs[i - 1];
    rhs[n - 3] /= fac_d[n - 3];
    for (int i = n - 3; i-- > 0;) rhs[i] = (rhs[i] - fac_u[i] * rhs[i + 1]) / fac_d[i];
    for (int i = 1; i + 1 < n; ++i) sol.phi[i] = rhs[i - 1];
    tau += dt;
  }
  return sol;
}

}  // namespace shock_test

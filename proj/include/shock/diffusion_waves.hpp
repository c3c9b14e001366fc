#pragma once

#include <Eigen/Dense>
#include <vector>

#include "shock/systems.hpp"

namespace shock {

// Self-similar solution of phi_t + a phi_x - beta phi_xx = -gamma (phi^2)_x
// with point-source data m*delta_0 at t = -1, carried along one outgoing
// characteristic mode with direction r.
struct DiffusionWave {
  double mass = 0.0;
  double speed = 0.0;  // shock-frame a
  double beta = 1.0;
  double gamma = 0.0;
  Vec direction;
};

struct WaveDerivatives {
  double value = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  double dxx = 0.0;
};

// Closed-form evaluation via the Hopf-Cole transformation in the moving frame
// xi = x - a(t+1), tau = t+1. With w = 2*gamma*phi the equation becomes
// standard Burgers w_tau + w w_xi = beta w_xixi, whose point-source solution is
//   w = 2 beta q g(xi,tau) / (1 - q errfn(xi/sqrt(4 beta tau))),
// q = 1 - exp(-gamma m / beta), g the unit heat kernel. gamma = 0 reduces to
// the convected heat kernel m g(xi, tau).
double eval_wave(const DiffusionWave& w, double x, double t);

// Analytic x/t derivatives of the closed form (the time derivative comes from
// differentiating the formula, not from the PDE, so residual checks stay
// meaningful).
WaveDerivatives wave_eval(const DiffusionWave& w, double x, double t);

inline std::pair<double, double> wave_derivatives(const DiffusionWave& w, double x, double t) {
  const auto d = wave_eval(w, x, t);
  return {d.dx, d.dt};
}

// The ansatz phi(x,t) = sum_j phi_j(x,t) r_j over the outgoing mode set.
struct DiffusionWaveSet {
  int dim = 0;
  std::vector<DiffusionWave> waves;
};

Vec eval_composite(const DiffusionWaveSet& set, double x, double t);

// One wave per outgoing mode, with (a, beta, gamma, r) read off the endstate
// data and the given masses (basis order of the outgoing mode list).
DiffusionWaveSet build_wave_set(const EndstateData& minus, const EndstateData& plus,
                                const std::vector<Mode>& modes, const std::vector<double>& masses);

}  // namespace shock

#include "shock/diffusion_waves.hpp"

#include <cmath>

namespace shock {
namespace {

constexpr double kPi = 3.14159265358979323846;

double errfn01(double z) { return 0.5 * (1.0 + std::erf(z)); }

}  // namespace

double eval_wave(const DiffusionWave& w, double x, double t) { return wave_eval(w, x, t).value; }

WaveDerivatives wave_eval(const DiffusionWave& w, double x, double t) {
  if (t < 0.0) throw NonpositiveTime("diffusion waves are evaluated for t >= 0");
  if (!(w.beta > 0.0)) throw NonpositiveBeta("diffusion coefficient must be positive");

  const double tau = t + 1.0;
  const double xi = x - w.speed * tau;
  const double beta = w.beta;

  const double g = std::exp(-xi * xi / (4.0 * beta * tau)) / std::sqrt(4.0 * kPi * beta * tau);
  const double g_xi = -xi / (2.0 * beta * tau) * g;
  const double g_xixi = (xi * xi / (4.0 * beta * beta * tau * tau) - 1.0 / (2.0 * beta * tau)) * g;
  const double g_tau = (xi * xi / (4.0 * beta * tau * tau) - 1.0 / (2.0 * tau)) * g;

  WaveDerivatives out;
  const double reynolds = w.gamma * w.mass / beta;
  if (std::abs(reynolds) < 1e-12) {
    out.value = w.mass * g;
    out.dx = w.mass * g_xi;
    out.dxx = w.mass * g_xixi;
    out.dt = w.mass * g_tau - w.speed * out.dx;
    return out;
  }

  const double q = -std::expm1(-reynolds);  // 1 - e^{-R}, stable for small R
  const double c = beta * q / w.gamma;
  const double z = xi / std::sqrt(4.0 * beta * tau);
  const double denom = 1.0 - q * errfn01(z);

  const double phi = c * g / denom;
  const double phi_xi = c * g_xi / denom + c * q * g * g / (denom * denom);
  const double phi_xixi = c * g_xixi / denom + 3.0 * c * q * g * g_xi / (denom * denom) +
                          2.0 * c * q * q * g * g * g / (denom * denom * denom);
  const double phi_tau =
      c * g_tau / denom - c * q * g * g * xi / (2.0 * tau) / (denom * denom);

  out.value = phi;
  out.dx = phi_xi;
  out.dxx = phi_xixi;
  out.dt = phi_tau - w.speed * phi_xi;
  return out;
}

Vec eval_composite(const DiffusionWaveSet& set, double x, double t) {
  Vec out = Vec::Zero(set.dim);
  for (const auto& w : set.waves) out += eval_wave(w, x, t) * w.direction;
  return out;
}

DiffusionWaveSet build_wave_set(const EndstateData& minus, const EndstateData& plus,
                                const std::vector<Mode>& modes,
                                const std::vector<double>& masses) {
  if (modes.size() != masses.size())
    throw MeshMismatch("one mass per outgoing mode is required");
  DiffusionWaveSet set;
  set.dim = static_cast<int>(minus.state.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& data = (modes[i].side == Side::Minus) ? minus : plus;
    DiffusionWave w;
    w.mass = masses[i];
    w.speed = data.speeds[modes[i].index];
    w.beta = data.beta[modes[i].index];
    w.gamma = data.gamma[modes[i].index];
    w.direction = data.r(modes[i].index);
    set.waves.push_back(std::move(w));
  }
  return set;
}

}  // namespace shock

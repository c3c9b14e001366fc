#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "shock/systems.hpp"

namespace shock {

// errfn(z) = pi^{-1/2} \int_{-infty}^z e^{-s^2} ds, normalized so that
// errfn(+infty) = 1 (the excited-kernel differences then tend to 1).
double errfn(double z);

// Everything needed to evaluate the envelope functions and the bounding
// kernels of the Green's-function decomposition: shock-frame characteristic
// speeds and diffusion rates at both endstates, the outgoing mode set, and
// the (existential) bound parameters C, M, eta, eta0.
struct EnvelopeContext {
  Vec speeds_minus, speeds_plus;  // ascending shock-frame speeds
  Vec beta_minus, beta_plus;
  std::vector<Mode> outgoing;
  // Weight of each incoming mode in the excited kernels: the shift-basis
  // coordinate of its eigendirection (zero entries for outgoing modes).
  Vec excited_weight_minus, excited_weight_plus;
  // Template transport speeds for the hyperbolic kernel H (constant here; the
  // strictly parabolic case has no H, so these are bound parameters only).
  std::vector<double> hyperbolic_speeds;

  double bound_c = 1.0;  // C
  double big_m = 4.0;    // M, Gaussian widening, >= 4 max beta
  double eta = 0.5;      // spatial exponential rate
  double eta0 = 0.5;     // temporal rate of H

  // Characteristic cone [a_1^- t, a_n^+ t], widened to include the shock
  // position so alpha covers the layer when one side has no outgoing mode.
  double cone_lo() const { return std::min(speeds_minus[0], 0.0); }
  double cone_hi() const { return std::max(speeds_plus[speeds_plus.size() - 1], 0.0); }
  bool chi(double x, double t) const { return x >= cone_lo() * t && x <= cone_hi() * t; }

  double outgoing_speed(const Mode& m) const {
    return (m.side == Side::Minus) ? speeds_minus[m.index] : speeds_plus[m.index];
  }
};

// Bound parameters default to C = 1, M = 4 max beta, eta = eta0 = alpha_exp/2.
EnvelopeContext make_context(const EndstateData& minus, const EndstateData& plus,
                             const Vec& jump, double alpha_exp);

// Envelope templates. psi1/psi1_bar/alpha carry the cone indicator; psi2 does
// not. All vanish-sum gracefully over an empty outgoing set.
double psi1(const EnvelopeContext& ctx, double x, double t);
double psi1_bar(const EnvelopeContext& ctx, double x, double t);
double psi2(const EnvelopeContext& ctx, double x, double t);
double alpha_env(const EnvelopeContext& ctx, double x, double t);

// psi1 + psi2 + alpha, the pointwise envelope of the main bound.
double envelope_sum(const EnvelopeContext& ctx, double x, double t);
// Fallback for an empty outgoing set (scalar shock): alpha + (1+t)^{-3/4} e^{-eta|x|}.
double envelope_fallback(const EnvelopeContext& ctx, double x, double t);

// Excited kernels. The per-mode errfn difference and the weighted sum e(y,t);
// side selects which half-line's formula applies.
double excited_bracket(double y, double t, double speed, double beta);
double excited_e(const EnvelopeContext& ctx, Side side, double y, double t);
double excited_e_dt(const EnvelopeContext& ctx, Side side, double y, double t);
double excited_e_dy(const EnvelopeContext& ctx, Side side, double y, double t);
// Bounding template for the mixed derivative: C t^{-1} sum of Gaussians.
double excited_e_dyt_bound(const EnvelopeContext& ctx, Side side, double y, double t);

enum class KernelDeriv { None, X, Y };

// The unified bounding kernel for Gtilde = S + R: convection plus reflection
// plus transmission diffusion kernels with the indicator chi_{|a_k t| >= |y|}
// and the e^{-eta x^{+/-}} cutoffs; stated for y <= 0 and mirrored for y >= 0.
double gtilde_bound(const EnvelopeContext& ctx, KernelDeriv deriv, double x, double t, double y);

// Time integral collapsing the y-integration against the H template:
//   sum_j int_0^t e^{-eta0 (t-s)} |weight(abar_j (t-s) - x, s)| ds.
double hkernel_time_integral(const EnvelopeContext& ctx,
                             const std::function<double(double, double)>& weight, double x,
                             double t, double rel_tol = 1e-7);

}  // namespace shock

#include "shock/templates.hpp"

#include <cmath>

#include "shock/quad.hpp"

namespace shock {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double gauss(double z) { return std::exp(-z * z) / kSqrtPi; }  // errfn'

double pos_part(double x) { return x > 0.0 ? x : 0.0; }
double neg_part(double x) { return x < 0.0 ? -x : 0.0; }

// Mirror image of the context under x -> -x: sides swap and speeds negate
// (order reverses to stay ascending).
EnvelopeContext mirrored(const EnvelopeContext& ctx) {
  EnvelopeContext m = ctx;
  m.speeds_minus = -ctx.speeds_plus.reverse();
  m.speeds_plus = -ctx.speeds_minus.reverse();
  m.beta_minus = ctx.beta_plus.reverse();
  m.beta_plus = ctx.beta_minus.reverse();
  m.excited_weight_minus = ctx.excited_weight_plus.reverse();
  m.excited_weight_plus = ctx.excited_weight_minus.reverse();
  m.outgoing.clear();
  const int n = static_cast<int>(ctx.speeds_minus.size());
  for (const auto& mode : ctx.outgoing) {
    const Side side = (mode.side == Side::Minus) ? Side::Plus : Side::Minus;
    m.outgoing.push_back({side, n - 1 - mode.index});
  }
  return m;
}

}  // namespace

double errfn(double z) { return 0.5 * (1.0 + std::erf(z)); }

EnvelopeContext make_context(const EndstateData& minus, const EndstateData& plus, const Vec& jump,
                             double alpha_exp) {
  EnvelopeContext ctx;
  ctx.speeds_minus = minus.speeds;
  ctx.speeds_plus = plus.speeds;
  ctx.beta_minus = minus.beta;
  ctx.beta_plus = plus.beta;
  ctx.outgoing = outgoing_modes(minus, plus);
  ctx.big_m = 4.0 * std::max(minus.beta.maxCoeff(), plus.beta.maxCoeff());
  ctx.eta = 0.5 * alpha_exp;
  ctx.eta0 = 0.5 * alpha_exp;

  const ShiftBasis basis(minus, plus, jump);
  const int n = static_cast<int>(minus.speeds.size());
  ctx.excited_weight_minus = Vec::Zero(n);
  ctx.excited_weight_plus = Vec::Zero(n);
  for (int k = 0; k < n; ++k) {
    if (minus.speeds[k] > 0.0) {
      ctx.excited_weight_minus[k] = basis.shift_coordinate(minus.r(k));
      ctx.hyperbolic_speeds.push_back(minus.speeds[k]);
    }
    if (plus.speeds[k] < 0.0) {
      ctx.excited_weight_plus[k] = basis.shift_coordinate(plus.r(k));
      ctx.hyperbolic_speeds.push_back(plus.speeds[k]);
    }
  }
  return ctx;
}

double psi1(const EnvelopeContext& ctx, double x, double t) {
  if (!ctx.chi(x, t)) return 0.0;
  const double t13 = std::cbrt(t);
  double sum = 0.0;
  for (const auto& mode : ctx.outgoing) {
    const double a = ctx.outgoing_speed(mode);
    sum += std::pow(1.0 + std::abs(x - a * t) + t13, -0.75);
  }
  return sum / std::sqrt(1.0 + t);
}

double psi1_bar(const EnvelopeContext& ctx, double x, double t) {
  if (!ctx.chi(x, t)) return 0.0;
  double sum = 0.0;
  for (const auto& mode : ctx.outgoing) {
    const double a = ctx.outgoing_speed(mode);
    sum += std::pow(1.0 + std::abs(x - a * t), -0.75);
  }
  return sum / std::sqrt(1.0 + t);
}

double psi2(const EnvelopeContext& ctx, double x, double t) {
  const double rt = std::sqrt(t);
  double sum = 0.0;
  for (const auto& mode : ctx.outgoing) {
    const double a = ctx.outgoing_speed(mode);
    sum += std::pow(1.0 + std::abs(x - a * t) + rt, -1.5);
  }
  return sum;
}

double alpha_env(const EnvelopeContext& ctx, double x, double t) {
  if (!ctx.chi(x, t)) return 0.0;
  return std::pow(1.0 + t, -0.75) / std::sqrt(1.0 + std::abs(x));
}

double envelope_sum(const EnvelopeContext& ctx, double x, double t) {
  return psi1(ctx, x, t) + psi2(ctx, x, t) + alpha_env(ctx, x, t);
}

double envelope_fallback(const EnvelopeContext& ctx, double x, double t) {
  return alpha_env(ctx, x, t) + std::pow(1.0 + t, -0.75) * std::exp(-ctx.eta * std::abs(x));
}

double excited_bracket(double y, double t, double speed, double beta) {
  if (t <= 0.0) return 0.0;
  const double w = std::sqrt(4.0 * beta * t);
  return errfn((y + speed * t) / w) - errfn((y - speed * t) / w);
}

double excited_e(const EnvelopeContext& ctx, Side side, double y, double t) {
  if (t <= 0.0) return 0.0;
  double sum = 0.0;
  if (side == Side::Minus) {
    for (int k = 0; k < ctx.speeds_minus.size(); ++k)
      if (ctx.speeds_minus[k] > 0.0)
        sum += excited_bracket(y, t, ctx.speeds_minus[k], ctx.beta_minus[k]) *
               ctx.excited_weight_minus[k];
  } else {
    for (int k = 0; k < ctx.speeds_plus.size(); ++k)
      if (ctx.speeds_plus[k] < 0.0)
        sum += excited_bracket(-y, t, -ctx.speeds_plus[k], ctx.beta_plus[k]) *
               ctx.excited_weight_plus[k];
  }
  return sum;
}

double excited_e_dy(const EnvelopeContext& ctx, Side side, double y, double t) {
  if (t <= 0.0) return 0.0;
  double sum = 0.0;
  auto term = [&](double yy, double a, double beta, double weight, double sign) {
    const double w = std::sqrt(4.0 * beta * t);
    sum += sign * weight * (gauss((yy + a * t) / w) - gauss((yy - a * t) / w)) / w;
  };
  if (side == Side::Minus) {
    for (int k = 0; k < ctx.speeds_minus.size(); ++k)
      if (ctx.speeds_minus[k] > 0.0)
        term(y, ctx.speeds_minus[k], ctx.beta_minus[k], ctx.excited_weight_minus[k], 1.0);
  } else {
    for (int k = 0; k < ctx.speeds_plus.size(); ++k)
      if (ctx.speeds_plus[k] < 0.0)
        term(-y, -ctx.speeds_plus[k], ctx.beta_plus[k], ctx.excited_weight_plus[k], -1.0);
  }
  return sum;
}

double excited_e_dt(const EnvelopeContext& ctx, Side side, double y, double t) {
  if (t <= 0.0) return 0.0;
  double sum = 0.0;
  auto term = [&](double yy, double a, double beta, double weight) {
    const double w = std::sqrt(4.0 * beta * t);
    const double zp = (yy + a * t) / w;
    const double zm = (yy - a * t) / w;
    sum += weight * (gauss(zp) * (a * t - yy) + gauss(zm) * (yy + a * t)) / (2.0 * t * w);
  };
  if (side == Side::Minus) {
    for (int k = 0; k < ctx.speeds_minus.size(); ++k)
      if (ctx.speeds_minus[k] > 0.0)
        term(y, ctx.speeds_minus[k], ctx.beta_minus[k], ctx.excited_weight_minus[k]);
  } else {
    for (int k = 0; k < ctx.speeds_plus.size(); ++k)
      if (ctx.speeds_plus[k] < 0.0)
        term(-y, -ctx.speeds_plus[k], ctx.beta_plus[k], ctx.excited_weight_plus[k]);
  }
  return sum;
}

double excited_e_dyt_bound(const EnvelopeContext& ctx, Side side, double y, double t) {
  if (t <= 0.0) return 0.0;
  double sum = 0.0;
  if (side == Side::Minus) {
    for (int k = 0; k < ctx.speeds_minus.size(); ++k)
      if (ctx.speeds_minus[k] > 0.0) {
        const double u = y + ctx.speeds_minus[k] * t;
        sum += std::exp(-u * u / (ctx.big_m * t));
      }
  } else {
    for (int k = 0; k < ctx.speeds_plus.size(); ++k)
      if (ctx.speeds_plus[k] < 0.0) {
        const double u = -y - ctx.speeds_plus[k] * t;
        sum += std::exp(-u * u / (ctx.big_m * t));
      }
  }
  return ctx.bound_c / t * sum;
}

double gtilde_bound(const EnvelopeContext& ctx, KernelDeriv deriv, double x, double t, double y) {
  if (t <= 0.0) return 0.0;
  if (y > 0.0) return gtilde_bound(mirrored(ctx), deriv, -x, t, -y);

  const double rt_inv = 1.0 / std::sqrt(t);
  const double cut_plus = std::exp(-ctx.eta * pos_part(x));
  const double cut_minus = std::exp(-ctx.eta * neg_part(x));
  const int n = static_cast<int>(ctx.speeds_minus.size());

  double kernels = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = x - y - ctx.speeds_minus[k] * t;
    kernels += rt_inv * std::exp(-u * u / (ctx.big_m * t)) * cut_plus;
  }
  for (int k = 0; k < n; ++k) {
    const double ak = ctx.speeds_minus[k];
    if (!(ak > 0.0) || std::abs(ak * t) < std::abs(y)) continue;
    const double t_refl = t - std::abs(y / ak);
    for (int j = 0; j < n; ++j) {
      const double aj = ctx.speeds_minus[j];
      if (aj < 0.0) {
        const double u = x - aj * t_refl;
        kernels += rt_inv * std::exp(-u * u / (ctx.big_m * t)) * cut_plus;
      }
    }
    for (int j = 0; j < static_cast<int>(ctx.speeds_plus.size()); ++j) {
      const double aj = ctx.speeds_plus[j];
      if (aj > 0.0) {
        const double u = x - aj * t_refl;
        kernels += rt_inv * std::exp(-u * u / (ctx.big_m * t)) * cut_minus;
      }
    }
  }

  double prefactor = 1.0;
  if (deriv == KernelDeriv::Y) prefactor = rt_inv;
  if (deriv == KernelDeriv::X) prefactor = rt_inv + std::exp(-ctx.eta * std::abs(x));
  return ctx.bound_c * prefactor * kernels;
}

double hkernel_time_integral(const EnvelopeContext& ctx,
                             const std::function<double(double, double)>& weight, double x,
                             double t, double rel_tol) {
  if (t <= 0.0) return 0.0;
  double sum = 0.0;
  for (const double a : ctx.hyperbolic_speeds) {
    auto integrand = [&](double s) {
      return std::exp(-ctx.eta0 * (t - s)) * std::abs(weight(a * (t - s) - x, s));
    };
    sum += integrate_time_singular(integrand, t, 1e-14, rel_tol).value;
  }
  return sum;
}

}  // namespace shock

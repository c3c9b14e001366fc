#include "shock/profile.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "shock/numerics.hpp"

namespace shock {
namespace {

// Right-hand side of the traveling-wave ODE u' = B(u)^{-1} (f(u) - f(u_-)),
// f the shock-frame flux.
struct ProfileOde {
  const SystemModel& model;
  Vec flux_minus;

  explicit ProfileOde(const SystemModel& m) : model(m), flux_minus(m.shockframe_flux(m.u_minus)) {}

  Vec operator()(const Vec& u) const {
    const Vec rhs = model.shockframe_flux(u) - flux_minus;
    if (model.n == 1) return rhs / model.viscosity(u)(0, 0);
    return model.viscosity(u).partialPivLu().solve(rhs);
  }
};

Vec rk4_step(const ProfileOde& f, const Vec& u, double h) {
  const Vec k1 = f(u);
  const Vec k2 = f(u + 0.5 * h * k1);
  const Vec k3 = f(u + 0.5 * h * k2);
  const Vec k4 = f(u + h * k3);
  return u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Unstable eigenpair of B^{-1}(dF - sI) at u_minus; must be one-dimensional.
std::pair<double, Vec> unstable_direction(const SystemModel& model) {
  const Mat j = model.viscosity(model.u_minus).partialPivLu().solve(
      model.shockframe_jacobian(model.u_minus));
  Eigen::EigenSolver<Mat> es(j);
  int found = -1;
  for (int i = 0; i < model.n; ++i) {
    if (std::abs(es.eigenvalues()[i].imag()) > 1e-10) continue;
    if (es.eigenvalues()[i].real() > 1e-12) {
      if (found >= 0) throw NoConnection("unstable manifold of u_minus is not one-dimensional");
      found = i;
    }
  }
  if (found < 0) throw NoConnection("u_minus has no unstable direction");
  Vec r = es.eigenvectors().col(found).real();
  r.normalize();
  if (r.dot(model.u_plus - model.u_minus) < 0.0) r = -r;
  return {es.eigenvalues()[found].real(), r};
}

}  // namespace

Vec ShockProfile::eval(double x) const {
  const double x_right = x_left + spacing * (points() - 1);
  if (x <= x_left) return values.col(0);
  if (x >= x_right) return values.col(points() - 1);
  Vec out(dim());
  for (int c = 0; c < dim(); ++c) {
    // Rows of the column-major sample matrix are strided; copy the stencil.
    const double s = (x - x_left) / spacing;
    int i0 = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, points() - 4);
    double stencil[4] = {values(c, i0), values(c, i0 + 1), values(c, i0 + 2), values(c, i0 + 3)};
    out[c] = interp_cubic(std::span<const double>(stencil, 4), x_left + spacing * i0, spacing, x);
  }
  return out;
}

Vec ShockProfile::eval_derivative(double x) const {
  const double x_right = x_left + spacing * (points() - 1);
  if (x <= x_left) return derivative.col(0);
  if (x >= x_right) return derivative.col(points() - 1);
  Vec out(dim());
  for (int c = 0; c < dim(); ++c) {
    const double s = (x - x_left) / spacing;
    int i0 = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, points() - 4);
    double stencil[4] = {derivative(c, i0), derivative(c, i0 + 1), derivative(c, i0 + 2),
                         derivative(c, i0 + 3)};
    out[c] = interp_cubic(std::span<const double>(stencil, 4), x_left + spacing * i0, spacing, x);
  }
  return out;
}

ShockProfile solve_profile(const SystemModel& model, double domain_halfwidth, int mesh_points) {
  const double big_x = domain_halfwidth;
  const int n_pts = mesh_points;
  const double h = 2.0 * big_x / (n_pts - 1);
  const ProfileOde ode(model);

  {  // Lax connection sanity check before shooting.
    const auto dm = endstate_data(model, Side::Minus, model.u_minus);
    const auto dp = endstate_data(model, Side::Plus, model.u_plus);
    if (incoming_count(dm, dp) != model.n + 1)
      throw NoConnection("model is not a pure Lax shock (incoming count != n+1)");
  }

  const auto [rate_u, dir_u] = unstable_direction(model);
  const double jump = (model.u_plus - model.u_minus).norm();
  const double eps = 1e-6 * jump;
  const Vec seed = model.u_minus + eps * dir_u;
  const double mid = 0.5 * (model.u_minus[0] + model.u_plus[0]);
  const double sign0 = (model.u_minus[0] < mid) ? -1.0 : 1.0;  // sign of (u1 - mid) at the seed

  // Pass 1: march until the first component crosses the endstate midpoint.
  const double h_sub = h / 4.0;
  const double max_len = 400.0 + 80.0 / rate_u;
  Vec u = seed;
  double x_here = 0.0;  // seed coordinate
  double cross = -1.0;
  Vec bracket_state;
  while (x_here < max_len) {
    const Vec next = rk4_step(ode, u, h_sub);
    if ((next[0] - mid) * sign0 <= 0.0) {
      bracket_state = u;
      break;
    }
    u = next;
    x_here += h_sub;
    if ((u - model.u_minus).norm() > 10.0 * jump)
      throw NoConnection("trajectory left the connection region");
  }
  if (x_here >= max_len) throw NoConnection("first component never reaches the midpoint");

  double lo = 0.0, hi = h_sub;  // offsets from bracket_state
  for (int it = 0; it < 60; ++it) {
    const double mid_off = 0.5 * (lo + hi);
    const Vec probe = rk4_step(ode, bracket_state, mid_off);
    if ((probe[0] - mid) * sign0 <= 0.0)
      hi = mid_off;
    else
      lo = mid_off;
  }
  const double x_cross = x_here + 0.5 * (lo + hi);  // seed coordinate of the centering point

  // Pass 2: sample the final mesh x_i in centered coordinates. Points at or
  // behind the seed use the linearized unstable manifold; the rest come from
  // one forward sweep landing exactly on mesh nodes.
  ShockProfile prof;
  prof.x_left = -big_x;
  prof.spacing = h;
  prof.u_minus = model.u_minus;
  prof.u_plus = model.u_plus;
  prof.values = Mat(model.n, n_pts);
  prof.derivative = Mat(model.n, n_pts);

  int i = 0;
  for (; i < n_pts; ++i) {
    const double xi_seed = prof.x(i) + x_cross;  // seed coordinate of mesh node i
    if (xi_seed > 0.0) break;
    prof.values.col(i) = model.u_minus + (eps * std::exp(rate_u * xi_seed)) * dir_u;
  }
  u = seed;
  double pos = 0.0;
  for (; i < n_pts; ++i) {
    const double target = prof.x(i) + x_cross;
    while (target - pos > 1.5 * h_sub) {
      u = rk4_step(ode, u, h_sub);
      pos += h_sub;
    }
    if (target > pos) {
      u = rk4_step(ode, u, target - pos);
      pos = target;
    }
    prof.values.col(i) = u;
    if ((u - model.u_minus).norm() > 10.0 * jump)
      throw NoConnection("trajectory left the connection region");
  }
  for (int k = 0; k < n_pts; ++k) prof.derivative.col(k) = ode(prof.values.col(k));

  if ((prof.values.col(n_pts - 1) - model.u_plus).norm() > 1e-4 * jump)
    throw NoConnection("trajectory does not approach u_plus");

  prof.alpha_exp = fit_decay_rate(prof);
  if (std::exp(-prof.alpha_exp * big_x) >= 1e-8)
    throw DomainTooSmall("exp(-alpha X) >= 1e-8; enlarge the domain");
  return prof;
}

Mat profile_shift(const ShockProfile& profile, double delta) {
  if (std::abs(delta) >= profile.halfwidth() / 10.0)
    throw ShiftOutOfRange("|delta| must be below X/10");
  Mat out(profile.dim(), profile.points());
  for (int i = 0; i < profile.points(); ++i) out.col(i) = profile.eval(profile.x(i) + delta);
  return out;
}

double fit_decay_rate(const ShockProfile& profile) {
  const double jump = (profile.u_plus - profile.u_minus).norm();
  const double floor = 1e-9 * jump;
  const double cap = 1e-2 * jump;
  double alpha = std::numeric_limits<double>::infinity();
  int sides_fitted = 0;
  for (const Side side : {Side::Minus, Side::Plus}) {
    const Vec& endstate = (side == Side::Minus) ? profile.u_minus : profile.u_plus;
    std::vector<double> xs, logs;
    for (int i = 0; i < profile.points(); ++i) {
      const double x = profile.x(i);
      if ((side == Side::Minus && x >= 0.0) || (side == Side::Plus && x <= 0.0)) continue;
      const double dev = (profile.values.col(i) - endstate).norm();
      if (dev <= floor || dev >= cap) continue;
      xs.push_back(std::abs(x));
      logs.push_back(std::log(dev));
    }
    if (xs.size() < 16) continue;
    const LineFit fit = fit_line(xs, logs);
    if (fit.slope < 0.0) {
      alpha = std::min(alpha, -fit.slope);
      ++sides_fitted;
    }
  }
  if (sides_fitted == 0 || !std::isfinite(alpha) || alpha <= 0.0)
    throw TailAtNoiseFloor("no usable tail samples to fit a decay rate");
  return alpha;
}

}  // namespace shock

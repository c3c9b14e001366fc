#include "shock/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shock {

double SystemModel::max_speed(const Vec& u) const {
  Eigen::EigenSolver<Mat> es(shockframe_jacobian(u), false);
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, std::abs(es.eigenvalues()[i]));
  return m;
}

SystemModel make_burgers() {
  SystemModel m;
  m.n = 1;
  m.name = "burgers";
  m.flux = [](const Vec& u) { return Vec::Constant(1, 0.5 * u[0] * u[0]); };
  m.jacobian = [](const Vec& u) { return Mat::Constant(1, 1, u[0]); };
  m.hessian = [](const Vec&, const Vec& a, const Vec& b) {
    return Vec::Constant(1, a[0] * b[0]);
  };
  m.third_derivative = [](const Vec&, const Vec&, const Vec&, const Vec&) {
    return Vec::Zero(1);
  };
  m.viscosity = [](const Vec&) { return Mat::Identity(1, 1); };
  m.shock_speed = 0.0;
  m.u_minus = Vec::Constant(1, 1.0);
  m.u_plus = Vec::Constant(1, -1.0);
  m.flux_batch = [](const double* u, double* f, int count) {
    for (int i = 0; i < count; ++i) f[i] = 0.5 * u[i] * u[i];
  };
  m.speed_batch = [](const double* u, double* s, int count) {
    for (int i = 0; i < count; ++i) s[i] = std::abs(u[i]);
  };
  return m;
}

SystemModel make_psystem(double gamma_gas, double v_minus, double v_plus) {
  if (!(v_minus > 0.0) || !(v_plus > 0.0))
    throw ConfigError("psystem requires positive specific volumes");
  if (v_minus == v_plus) throw NoAdmissibleShock("degenerate data: v_minus == v_plus");

  auto pressure = [gamma_gas](double v) { return std::pow(v, -gamma_gas); };
  auto dp = [gamma_gas](double v) { return -gamma_gas * std::pow(v, -gamma_gas - 1.0); };
  auto d2p = [gamma_gas](double v) {
    return gamma_gas * (gamma_gas + 1.0) * std::pow(v, -gamma_gas - 2.0);
  };
  auto d3p = [gamma_gas](double v) {
    return -gamma_gas * (gamma_gas + 1.0) * (gamma_gas + 2.0) * std::pow(v, -gamma_gas - 3.0);
  };

  const double s2 = -(pressure(v_plus) - pressure(v_minus)) / (v_plus - v_minus);
  if (!(s2 > 0.0)) throw NoAdmissibleShock("Rankine-Hugoniot gives nonpositive s^2");

  SystemModel m;
  m.n = 2;
  m.name = "psystem";
  m.flux = [pressure](const Vec& u) {
    Vec f(2);
    f << -u[1], pressure(u[0]);
    return f;
  };
  m.jacobian = [dp](const Vec& u) {
    Mat j(2, 2);
    j << 0.0, -1.0, dp(u[0]), 0.0;
    return j;
  };
  m.hessian = [d2p](const Vec& u, const Vec& a, const Vec& b) {
    Vec h(2);
    h << 0.0, d2p(u[0]) * a[0] * b[0];
    return h;
  };
  m.third_derivative = [d3p](const Vec& u, const Vec& a, const Vec& b, const Vec& c) {
    Vec h(2);
    h << 0.0, d3p(u[0]) * a[0] * b[0] * c[0];
    return h;
  };
  m.viscosity = [](const Vec&) { return Mat::Identity(2, 2); };

  // Both signs satisfy Rankine-Hugoniot; the Lax count selects the shock.
  // (The batched kernels capture the selected shock speed below.)
  for (const double s : {std::sqrt(s2), -std::sqrt(s2)}) {
    SystemModel cand = m;
    cand.shock_speed = s;
    cand.u_minus = Vec(2);
    cand.u_minus << v_minus, 0.0;
    cand.u_plus = Vec(2);
    cand.u_plus << v_plus, -s * (v_plus - v_minus);
    cand.flux_batch = [gamma_gas, s](const double* u, double* f, int count) {
      for (int i = 0; i < count; ++i) {
        const double v = u[2 * i], w = u[2 * i + 1];
        f[2 * i] = -w - s * v;
        f[2 * i + 1] = std::pow(v, -gamma_gas) - s * w;
      }
    };
    cand.speed_batch = [gamma_gas, s](const double* u, double* sp, int count) {
      const double abs_s = std::abs(s);
      for (int i = 0; i < count; ++i) {
        const double v = u[2 * i];
        sp[i] = std::sqrt(gamma_gas * std::pow(v, -gamma_gas - 1.0)) + abs_s;
      }
    };
    try {
      const auto dm = endstate_data(cand, Side::Minus, cand.u_minus);
      const auto dpv = endstate_data(cand, Side::Plus, cand.u_plus);
      if (incoming_count(dm, dpv) == cand.n + 1) return cand;
    } catch (const Error&) {
      continue;  // characteristic speed vanished for this sign
    }
  }
  throw NoAdmissibleShock("Lax inequalities fail for both signs of s");
}

EndstateData endstate_data(const SystemModel& model, Side side, const Vec& u) {
  const int n = model.n;
  const Mat a_frame = model.shockframe_jacobian(u);
  Eigen::EigenSolver<Mat> es(a_frame);
  const double scale = std::max(a_frame.cwiseAbs().maxCoeff(), 1.0);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()[i].imag()) > 1e-9 * scale)
      throw ComplexOrRepeatedEigenvalues("complex eigenvalue of shock-frame Jacobian");
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return es.eigenvalues()[i].real() < es.eigenvalues()[j].real();
  });

  EndstateData data;
  data.side = side;
  data.state = u;
  data.speeds = Vec(n);
  data.right = Mat(n, n);
  for (int k = 0; k < n; ++k) {
    data.speeds[k] = es.eigenvalues()[order[k]].real();
    Vec r = es.eigenvectors().col(order[k]).real();
    // Convention: scale so the first nonzero component equals +1; gamma_j is
    // eigenvector-scale dependent, so this pins all downstream numbers.
    int lead = 0;
    while (lead < n && std::abs(r[lead]) < 1e-12 * r.norm()) ++lead;
    r /= r[lead];
    data.right.col(k) = r;
  }
  for (int k = 0; k + 1 < n; ++k)
    if (data.speeds[k + 1] - data.speeds[k] < 1e-9 * scale)
      throw ComplexOrRepeatedEigenvalues("repeated eigenvalues of shock-frame Jacobian");
  for (int k = 0; k < n; ++k)
    if (std::abs(data.speeds[k]) < 1e-12 * scale)
      throw ZeroShockFrameSpeed("characteristic speed equals the shock speed");

  data.left = data.right.inverse();

  const Mat b_visc = model.viscosity(u);
  data.beta = Vec(n);
  data.gamma = Vec(n);
  data.b = Mat(n, n);
  data.interaction.assign(n, Mat(n, n));
  for (int i = 0; i < n; ++i) {
    const Vec li = data.l(i);
    for (int j = 0; j < n; ++j) {
      data.b(i, j) = li.dot(b_visc * data.r(j));
      for (int k = 0; k < n; ++k)
        data.interaction[i](j, k) = li.dot(model.hessian(u, data.r(j), data.r(k)));
    }
    data.beta[i] = data.b(i, i);
    data.gamma[i] = data.interaction[i](i, i);
    if (!(data.beta[i] > 0.0))
      throw Error(Error::Kind::Numerical, "effective diffusion rate beta_j is not positive");
  }
  return data;
}

std::vector<Mode> outgoing_modes(const EndstateData& minus, const EndstateData& plus) {
  std::vector<Mode> modes;
  for (int j = 0; j < minus.speeds.size(); ++j)
    if (minus.speeds[j] < 0.0) modes.push_back({Side::Minus, j});
  for (int j = 0; j < plus.speeds.size(); ++j)
    if (plus.speeds[j] > 0.0) modes.push_back({Side::Plus, j});
  return modes;
}

int incoming_count(const EndstateData& minus, const EndstateData& plus) {
  int count = 0;
  for (int j = 0; j < minus.speeds.size(); ++j)
    if (minus.speeds[j] > 0.0) ++count;
  for (int j = 0; j < plus.speeds.size(); ++j)
    if (plus.speeds[j] < 0.0) ++count;
  return count;
}

ShiftBasis::ShiftBasis(const EndstateData& minus, const EndstateData& plus, const Vec& jump) {
  outgoing_ = outgoing_modes(minus, plus);
  const int n = static_cast<int>(jump.size());
  if (static_cast<int>(outgoing_.size()) + 1 != n)
    throw DegenerateBasis("outgoing modes plus the jump direction do not count to n");
  basis_ = Mat(n, n);
  for (int c = 0; c < n - 1; ++c) {
    const auto& mode = outgoing_[c];
    basis_.col(c) = (mode.side == Side::Minus) ? minus.r(mode.index) : plus.r(mode.index);
  }
  basis_.col(n - 1) = jump;
  lu_ = Eigen::PartialPivLU<Mat>(basis_);
  const double cond_floor = basis_.cwiseAbs().maxCoeff() * 1e-12;
  if (std::abs(lu_.determinant()) < std::pow(cond_floor, n))
    throw DegenerateBasis("condition (Dii) basis is numerically singular");
}

ShiftBasis::Split ShiftBasis::split(const Vec& excess_mass) const {
  const Vec c = lu_.solve(excess_mass);
  Split out;
  out.masses.assign(c.data(), c.data() + c.size() - 1);
  out.delta = c[c.size() - 1];
  return out;
}

}  // namespace shock

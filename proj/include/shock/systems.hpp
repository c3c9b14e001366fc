#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "shock/errors.hpp"

namespace shock {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A system of viscous conservation laws u_t + F(u)_x = (B(u) u_x)_x studied in
// a frame moving with the shock, so the effective flux is F(u) - s*u.
struct SystemModel {
  int n = 0;
  std::string name;
  std::function<Vec(const Vec&)> flux;
  std::function<Mat(const Vec&)> jacobian;
  // Bilinear Hessian d2F(u)(a, b).
  std::function<Vec(const Vec&, const Vec&, const Vec&)> hessian;
  // Trilinear d3F(u)(a, b, c); used when differentiating frozen coefficients.
  std::function<Vec(const Vec&, const Vec&, const Vec&, const Vec&)> third_derivative;
  std::function<Mat(const Vec&)> viscosity;
  double shock_speed = 0.0;
  Vec u_minus, u_plus;

  // Batched kernels on node-major flat arrays for the time stepper; the
  // per-node std::function interface is too slow at ~1e10 node-steps. Both
  // compute shock-frame quantities. Optional: the stepper falls back to the
  // generic interface when absent.
  std::function<void(const double*, double*, int)> flux_batch;
  std::function<void(const double*, double*, int)> speed_batch;

  Vec shockframe_flux(const Vec& u) const { return flux(u) - shock_speed * u; }
  Mat shockframe_jacobian(const Vec& u) const {
    return jacobian(u) - shock_speed * Mat::Identity(n, n);
  }
  // Largest shock-frame characteristic speed magnitude at u.
  double max_speed(const Vec& u) const;
};

enum class Side { Minus, Plus };

// Characteristic data at one endstate: sorted shock-frame speeds, normalized
// eigenpairs, scalar diffusion and coupling coefficients, and the interaction
// tensors of the frozen-coefficient expansion.
struct EndstateData {
  Side side = Side::Minus;
  Vec state;
  Vec speeds;          // a_j = lambda_j(dF) - s, ascending
  Mat right;           // columns r_j, first nonzero component +1
  Mat left;            // rows l_j, l_j . r_k = delta_jk
  Vec beta;            // l_j . B . r_j
  Vec gamma;           // l_j . d2F(r_j, r_j)
  Mat b;               // b(i,j) = l_i . B . r_j
  std::vector<Mat> interaction;  // interaction[i](j,k) = l_i . d2F(r_j, r_k)

  Vec r(int j) const { return right.col(j); }
  Vec l(int j) const { return left.row(j).transpose(); }
};

// One outgoing characteristic mode: a_j < 0 on the minus side or a_j > 0 on
// the plus side. Indices are 0-based into EndstateData::speeds.
struct Mode {
  Side side;
  int index;
  bool operator==(const Mode&) const = default;
};

SystemModel make_burgers();

// 2x2 p-system (v, u) with p(v) = v^{-gamma_gas} and identity viscosity; the
// shock speed solves the Rankine-Hugoniot relations and the sign is fixed by
// the Lax inequalities.
SystemModel make_psystem(double gamma_gas, double v_minus, double v_plus);

EndstateData endstate_data(const SystemModel& model, Side side, const Vec& u);

std::vector<Mode> outgoing_modes(const EndstateData& minus, const EndstateData& plus);

// Total number of incoming characteristics; a pure Lax shock has n + 1.
int incoming_count(const EndstateData& minus, const EndstateData& plus);

// The basis of hyperbolic-stability condition (Dii) for a Lax shock: outgoing
// eigendirections plus the jump u_+ - u_- (the integral of the profile
// derivative). Solving against it splits an excess-mass vector into outgoing
// diffusion-wave masses and a profile shift.
class ShiftBasis {
 public:
  ShiftBasis(const EndstateData& minus, const EndstateData& plus, const Vec& jump);

  struct Split {
    std::vector<double> masses;  // one per outgoing mode, basis order
    double delta = 0.0;          // coefficient on the jump direction
  };
  Split split(const Vec& excess_mass) const;

  const std::vector<Mode>& outgoing() const { return outgoing_; }
  const Mat& matrix() const { return basis_; }
  // Shift-direction coordinate of an arbitrary vector (the last solve entry).
  double shift_coordinate(const Vec& v) const { return split(v).delta; }

 private:
  std::vector<Mode> outgoing_;
  Mat basis_;
  Eigen::PartialPivLU<Mat> lu_;
};

}  // namespace shock

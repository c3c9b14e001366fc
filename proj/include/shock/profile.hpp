#pragma once

#include <Eigen/Dense>

#include "shock/systems.hpp"

namespace shock {

// Standing viscous shock profile sampled on a uniform mesh over [-X, X],
// centered so the first component crosses its endstate midpoint at x = 0.
// The shift family is u_bar^delta(x) = u_bar(x + delta) (Lax case, l = 1).
struct ShockProfile {
  double x_left = 0.0;   // -X
  double spacing = 0.0;  // mesh width h
  Mat values;            // n x N samples of u_bar
  Mat derivative;        // n x N samples of u_bar'
  Vec u_minus, u_plus;
  double alpha_exp = 0.0;  // fitted exponential tail rate

  int points() const { return static_cast<int>(values.cols()); }
  int dim() const { return static_cast<int>(values.rows()); }
  double x(int i) const { return x_left + spacing * i; }
  double halfwidth() const { return -x_left; }

  // Cubic interpolation; queries beyond the mesh clamp to the end samples
  // (the profile has converged to its endstates there).
  Vec eval(double x) const;
  Vec eval_derivative(double x) const;
  // u_bar^delta(x) = u_bar(x + delta).
  Vec eval_shifted(double x, double delta) const { return eval(x + delta); }
};

// Shooting solver along the one-dimensional unstable manifold of u_minus.
ShockProfile solve_profile(const SystemModel& model, double domain_halfwidth, int mesh_points);

// Samples of the shifted profile u_bar^delta on the profile mesh.
Mat profile_shift(const ShockProfile& profile, double delta);

// Least-squares exponential tail rate of |u_bar - u_pm|, fitted per side on
// the samples whose deviation lies inside a magnitude window above the
// integrator noise floor; returns the smaller (binding) rate.
double fit_decay_rate(const ShockProfile& profile);

}  // namespace shock

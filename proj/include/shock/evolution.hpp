#pragma once

#include <Eigen/Dense>
#include <vector>

#include "shock/profile.hpp"
#include "shock/systems.hpp"

namespace shock {

struct Mesh1D {
  double x_left = 0.0;
  double spacing = 0.0;
  int points = 0;

  double x(int i) const { return x_left + spacing * i; }
  double x_right() const { return x(points - 1); }
  bool same(const Mesh1D& o) const {
    return points == o.points && x_left == o.x_left && spacing == o.spacing;
  }
};

// One space-time slice: dim values per node, node-major storage.
struct GridField {
  Mesh1D mesh;
  int dim = 1;
  double time = 0.0;
  std::vector<double> data;

  static GridField zeros(const Mesh1D& mesh, int dim);

  double& at(int i, int c) { return data[static_cast<std::size_t>(i) * dim + c]; }
  double at(int i, int c) const { return data[static_cast<std::size_t>(i) * dim + c]; }
  Vec value(int i) const;
  void set_value(int i, const Vec& v);
  // Componentwise trapezoid integral.
  Vec integral() const;
  double sup_norm() const;
};

struct Trajectory {
  std::vector<GridField> snapshots;
  std::vector<Vec> mass_record;  // integral of (field - reference) per snapshot

  const GridField& at_time(double t) const;  // nearest recorded snapshot
  double max_mass_drift() const;
};

// Geometric snapshot schedule {0} U {2^{k/2}} U {t_end}, capped at t_end.
std::vector<double> geometric_times(double t_end);

struct EvolveOptions {
  double t_end = 1.0;
  double dt = 0.0;
  std::vector<double> record_times;  // defaults to geometric_times(t_end)
  double blowup_factor = 10.0;
};

// Conservative semi-implicit scheme: explicit centered flux differencing for
// F - sU with a local Lax-Friedrichs viscosity reduced by the diffusion the
// grid already resolves (q = max(0, lambda - 2 b/h)), plus Crank-Nicolson
// diffusion; far field pinned to the endstates. Spatially second order,
// first order in time.
Trajectory evolve_nonlinear(const SystemModel& model, const GridField& initial,
                            const GridField& reference, const EvolveOptions& opts);

// Same scheme for the linearization about a frozen baseline (the shifted
// profile): v_t = -(A(x)v)_x + (B(x)v_x)_x.
Trajectory evolve_linearized(const SystemModel& model, const GridField& baseline,
                             const GridField& initial, const EvolveOptions& opts);

// Linearized evolution of a unit-mass Gaussian of width sigma0 centered at y;
// approximates the Green's function column G(.,t;y) * direction for t >> sigma0^2.
Trajectory green_function_approx(const SystemModel& model, const GridField& baseline,
                                 double source_y, double sigma0, const EvolveOptions& opts,
                                 const Vec& direction);

// Newton solve for the steady state of the discrete scheme on the given mesh,
// started from the ODE profile. Subtracting this (rather than the sampled
// continuum profile) keeps truncation error out of the measured residual.
GridField discrete_steady_profile(const SystemModel& model, const ShockProfile& profile,
                                  const Mesh1D& mesh);

// Samples the profile (or any shift of it) on an arbitrary mesh.
GridField sample_profile(const ShockProfile& profile, const Mesh1D& mesh, double delta = 0.0);

}  // namespace shock

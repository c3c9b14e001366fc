#include "shock/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "shock/numerics.hpp"

namespace shock {
namespace {

constexpr double kCflSafety = 0.4;

// Batched flux/speed kernels; falls back to the per-node std::function
// interface when a model does not provide flat-array versions.
struct BatchedModel {
  std::function<void(const double*, double*, int)> flux;
  std::function<void(const double*, double*, int)> speed;
  int dim;

  explicit BatchedModel(const SystemModel& m) : dim(m.n) {
    if (m.flux_batch) {
      flux = m.flux_batch;
    } else {
      flux = [&m](const double* u, double* f, int count) {
        Vec tmp(m.n);
        for (int i = 0; i < count; ++i) {
          for (int c = 0; c < m.n; ++c) tmp[c] = u[i * m.n + c];
          const Vec out = m.shockframe_flux(tmp);
          for (int c = 0; c < m.n; ++c) f[i * m.n + c] = out[c];
        }
      };
    }
    if (m.speed_batch) {
      speed = m.speed_batch;
    } else {
      speed = [&m](const double* u, double* s, int count) {
        Vec tmp(m.n);
        for (int i = 0; i < count; ++i) {
          for (int c = 0; c < m.n; ++c) tmp[c] = u[i * m.n + c];
          s[i] = m.max_speed(tmp);
        }
      };
    }
  }
};

// The scheme assumes a state-independent viscosity matrix (both implemented
// systems have B = I; variable viscosity is out of scope here).
Mat constant_viscosity(const SystemModel& model, const GridField& probe_field) {
  const Mat b0 = model.viscosity(probe_field.value(0));
  const int stride = std::max(1, probe_field.mesh.points / 7);
  for (int i = 0; i < probe_field.mesh.points; i += stride) {
    const Mat bi = model.viscosity(probe_field.value(i));
    if ((bi - b0).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + b0.cwiseAbs().maxCoeff()))
      throw Error(Error::Kind::Config, "state-dependent viscosity is not supported by the stepper");
  }
  return b0;
}

bool is_diagonal(const Mat& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (i != j && std::abs(b(i, j)) > 1e-14 * (1.0 + b.cwiseAbs().maxCoeff())) return false;
  return true;
}

class BlockTridiagonalSolver {
 public:
  BlockTridiagonalSolver(std::vector<Mat> lower, std::vector<Mat> diag, std::vector<Mat> upper)
      : upper_(std::move(upper)) {
    const std::size_t m = diag.size();
    inv_.resize(m);
    couplers_.resize(m);
    inv_[0] = diag[0].inverse();
    for (std::size_t i = 1; i < m; ++i) {
      couplers_[i] = lower[i - 1] * inv_[i - 1];
      inv_[i] = Mat(diag[i] - couplers_[i] * upper_[i - 1]).inverse();
    }
  }

  void solve(std::vector<Vec>& rhs) const {
    const std::size_t m = inv_.size();
    for (std::size_t i = 1; i < m; ++i) rhs[i] -= couplers_[i] * rhs[i - 1];
    rhs[m - 1] = inv_[m - 1] * rhs[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) rhs[i] = inv_[i] * (rhs[i] - upper_[i] * rhs[i + 1]);
  }

 private:
  std::vector<Mat> upper_;
  std::vector<Mat> couplers_;
  std::vector<Mat> inv_;
};

// Crank-Nicolson solver for the diffusion half of the scheme, factored once.
class DiffusionSolver {
 public:
  DiffusionSolver(const Mat& b, double dt, double h, int interior) : b_(b), dim_(b.rows()) {
    const double r = dt / (2.0 * h * h);
    if (is_diagonal(b)) {
      for (int c = 0; c < dim_; ++c) {
        const double rc = r * b(c, c);
        scalar_.emplace_back(std::vector<double>(interior - 1, -rc),
                             std::vector<double>(interior, 1.0 + 2.0 * rc),
                             std::vector<double>(interior - 1, -rc));
      }
    } else {
      std::vector<Mat> lower(interior - 1, -r * b), upper(interior - 1, -r * b);
      std::vector<Mat> diag(interior, Mat::Identity(dim_, dim_) + 2.0 * r * b);
      block_ = std::make_unique<BlockTridiagonalSolver>(std::move(lower), std::move(diag),
                                                        std::move(upper));
      block_rhs_.assign(interior, Vec::Zero(dim_));
    }
  }

  // rhs: node-major interior data, overwritten with the solution.
  void solve(std::vector<double>& rhs, int interior, std::vector<double>& scratch) {
    if (!scalar_.empty()) {
      for (int c = 0; c < dim_; ++c) {
        scratch.resize(interior);
        for (int i = 0; i < interior; ++i) scratch[i] = rhs[i * dim_ + c];
        scalar_[c].solve(scratch);
        for (int i = 0; i < interior; ++i) rhs[i * dim_ + c] = scratch[i];
      }
    } else {
      for (int i = 0; i < interior; ++i)
        for (int c = 0; c < dim_; ++c) block_rhs_[i][c] = rhs[i * dim_ + c];
      block_->solve(block_rhs_);
      for (int i = 0; i < interior; ++i)
        for (int c = 0; c < dim_; ++c) rhs[i * dim_ + c] = block_rhs_[i][c];
    }
  }

  const Mat& b() const { return b_; }

 private:
  Mat b_;
  int dim_;
  std::vector<TridiagonalSolver> scalar_;
  std::unique_ptr<BlockTridiagonalSolver> block_;
  std::vector<Vec> block_rhs_;
};

struct RecordingPlan {
  std::vector<double> times;
  explicit RecordingPlan(const EvolveOptions& opts) {
    times = opts.record_times.empty() ? geometric_times(opts.t_end) : opts.record_times;
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.empty() || times.front() > 0.0) times.insert(times.begin(), 0.0);
  }
};

// Shared main loop. flux_into computes the node-major shock-frame flux array
// and edge_viscosity the local Lax-Friedrichs coefficient per edge.
template <class FluxFn, class EdgeViscFn>
Trajectory run_scheme(const GridField& initial, const GridField& reference,
                      const EvolveOptions& opts, const Mat& b_visc, FluxFn&& flux_into,
                      EdgeViscFn&& edge_viscosity) {
  const Mesh1D mesh = initial.mesh;
  const int n_pts = mesh.points;
  const int dim = initial.dim;
  const int interior = n_pts - 2;
  const double h = mesh.spacing;
  const double dt = opts.dt;
  if (!(dt > 0.0)) throw CflViolation("time step must be positive");

  RecordingPlan plan(opts);
  Trajectory traj;
  auto record = [&](const GridField& f) {
    traj.snapshots.push_back(f);
    Vec mass = Vec::Zero(dim);
    for (int c = 0; c < dim; ++c) {
      double sum = 0.5 * (f.at(0, c) - reference.at(0, c)) +
                   0.5 * (f.at(n_pts - 1, c) - reference.at(n_pts - 1, c));
      for (int i = 1; i + 1 < n_pts; ++i) sum += f.at(i, c) - reference.at(i, c);
      mass[c] = sum * h;
    }
    traj.mass_record.push_back(mass);
  };

  double range = 0.0;
  for (int i = 0; i < n_pts; ++i)
    for (int c = 0; c < dim; ++c) range = std::max(range, std::abs(initial.at(i, c)));
  range = std::max(range, 1e-12);

  GridField u = initial;
  record(u);
  std::size_t next_record = 1;

  DiffusionSolver diffusion(b_visc, dt, h, interior);
  std::vector<double> flux(static_cast<std::size_t>(n_pts) * dim);
  std::vector<double> qedge(n_pts - 1);
  std::vector<double> rhs(static_cast<std::size_t>(interior) * dim);
  std::vector<double> scratch;

  const long total_steps = static_cast<long>(std::ceil(opts.t_end / dt - 1e-12));
  const double r = dt / (2.0 * h * h);
  for (long step = 0; step < total_steps; ++step) {
    flux_into(u.data.data(), flux.data());
    edge_viscosity(u.data.data(), qedge.data());

    // rhs = u + dt*(-d_x fluxhat + 0.5 * diffusion), interior nodes only.
    for (int i = 1; i <= interior; ++i) {
      const double qr = qedge[i], ql = qedge[i - 1];
      for (int c = 0; c < dim; ++c) {
        const std::size_t k = static_cast<std::size_t>(i) * dim + c;
        const double um = u.data[k - dim], uc = u.data[k], up = u.data[k + dim];
        const double conv = 0.5 * (flux[k + dim] - flux[k - dim]) / h -
                            0.5 * (qr * (up - uc) - ql * (uc - um)) / h;
        double diff = 0.0;
        for (int d = 0; d < dim; ++d) {
          const std::size_t kd = static_cast<std::size_t>(i) * dim + d;
          diff += b_visc(c, d) * (u.data[kd + dim] - 2.0 * u.data[kd] + u.data[kd - dim]);
        }
        rhs[static_cast<std::size_t>(i - 1) * dim + c] = uc + dt * (-conv) + r * diff;
      }
    }
    // Dirichlet boundary contribution to the implicit operator.
    for (int c = 0; c < dim; ++c) {
      for (int d = 0; d < dim; ++d) {
        rhs[c] += r * b_visc(c, d) * u.at(0, d);
        rhs[static_cast<std::size_t>(interior - 1) * dim + c] +=
            r * b_visc(c, d) * u.at(n_pts - 1, d);
      }
    }
    diffusion.solve(rhs, interior, scratch);
    std::copy(rhs.begin(), rhs.end(), u.data.begin() + dim);
    u.time = (step + 1) * dt;

    if ((step & 1023) == 0 || next_record < plan.times.size()) {
      if ((step & 1023) == 0) {
        double m = 0.0;
        for (const double v : u.data) {
          if (!std::isfinite(v)) throw BlowUp("non-finite field value");
          m = std::max(m, std::abs(v));
        }
        if (m > opts.blowup_factor * range) throw BlowUp("field exceeded the blowup threshold");
      }
      while (next_record < plan.times.size() && u.time >= plan.times[next_record] - 1e-12) {
        record(u);
        ++next_record;
      }
    }
  }
  if (next_record < plan.times.size()) record(u);
  return traj;
}

double max_wave_speed(const BatchedModel& bm, const GridField& f) {
  std::vector<double> sp(f.mesh.points);
  bm.speed(f.data.data(), sp.data(), f.mesh.points);
  return *std::max_element(sp.begin(), sp.end());
}

}  // namespace

GridField GridField::zeros(const Mesh1D& mesh, int dim) {
  GridField f;
  f.mesh = mesh;
  f.dim = dim;
  f.data.assign(static_cast<std::size_t>(mesh.points) * dim, 0.0);
  return f;
}

Vec GridField::value(int i) const {
  Vec v(dim);
  for (int c = 0; c < dim; ++c) v[c] = at(i, c);
  return v;
}

void GridField::set_value(int i, const Vec& v) {
  for (int c = 0; c < dim; ++c) at(i, c) = v[c];
}

Vec GridField::integral() const {
  Vec out = Vec::Zero(dim);
  for (int c = 0; c < dim; ++c) {
    double sum = 0.5 * (at(0, c) + at(mesh.points - 1, c));
    for (int i = 1; i + 1 < mesh.points; ++i) sum += at(i, c);
    out[c] = sum * mesh.spacing;
  }
  return out;
}

double GridField::sup_norm() const {
  double m = 0.0;
  for (const double v : data) m = std::max(m, std::abs(v));
  return m;
}

const GridField& Trajectory::at_time(double t) const {
  if (snapshots.empty()) throw MeshMismatch("empty trajectory");
  std::size_t best = 0;
  for (std::size_t i = 1; i < snapshots.size(); ++i)
    if (std::abs(snapshots[i].time - t) < std::abs(snapshots[best].time - t)) best = i;
  return snapshots[best];
}

double Trajectory::max_mass_drift() const {
  double drift = 0.0;
  for (const auto& m : mass_record)
    drift = std::max(drift, (m - mass_record.front()).cwiseAbs().maxCoeff());
  return drift;
}

std::vector<double> geometric_times(double t_end) {
  std::vector<double> times{0.0};
  for (int k = 0;; ++k) {
    const double t = std::pow(2.0, 0.5 * k);
    if (t > t_end) break;
    times.push_back(t);
  }
  if (times.back() < t_end) times.push_back(t_end);
  return times;
}

Trajectory evolve_nonlinear(const SystemModel& model, const GridField& initial,
                            const GridField& reference, const EvolveOptions& opts) {
  if (!initial.mesh.same(reference.mesh)) throw MeshMismatch("initial/reference mesh differ");
  BatchedModel bm(model);
  const double h = initial.mesh.spacing;
  const double lambda = max_wave_speed(bm, initial);
  if (opts.dt > kCflSafety * h / std::max(lambda, 1e-300) * (1.0 + 1e-9))
    throw CflViolation("dt exceeds 0.4 h / max|a|");
  const Mat b_visc = constant_viscosity(model, initial);
  const double b_floor = Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (b_visc + b_visc.transpose()))
                             .eigenvalues()
                             .minCoeff();

  const int n_pts = initial.mesh.points;
  std::vector<double> speeds(n_pts);
  auto flux_into = [&bm, n_pts](const double* u, double* f) { bm.flux(u, f, n_pts); };
  auto edge_visc = [&bm, &speeds, n_pts, h, b_floor](const double* u, double* q) {
    bm.speed(u, speeds.data(), n_pts);
    const double resolved = 2.0 * b_floor / h;
    for (int i = 0; i + 1 < n_pts; ++i)
      q[i] = std::max(0.0, std::max(speeds[i], speeds[i + 1]) - resolved);
  };
  return run_scheme(initial, reference, opts, b_visc, flux_into, edge_visc);
}

Trajectory evolve_linearized(const SystemModel& model, const GridField& baseline,
                             const GridField& initial, const EvolveOptions& opts) {
  if (!initial.mesh.same(baseline.mesh)) throw MeshMismatch("initial/baseline mesh differ");
  BatchedModel bm(model);
  const int n_pts = initial.mesh.points;
  const int dim = initial.dim;
  const double h = initial.mesh.spacing;

  // Frozen coefficients A(x) = dF(baseline) - sI and the edge viscosities.
  std::vector<double> a_flat(static_cast<std::size_t>(n_pts) * dim * dim);
  for (int i = 0; i < n_pts; ++i) {
    const Mat a = model.shockframe_jacobian(baseline.value(i));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        a_flat[(static_cast<std::size_t>(i) * dim + r) * dim + c] = a(r, c);
  }
  const Mat b_visc = constant_viscosity(model, baseline);
  const double b_floor = Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (b_visc + b_visc.transpose()))
                             .eigenvalues()
                             .minCoeff();
  std::vector<double> speeds(n_pts);
  bm.speed(baseline.data.data(), speeds.data(), n_pts);
  std::vector<double> qedge_fixed(n_pts - 1);
  const double resolved = 2.0 * b_floor / h;
  for (int i = 0; i + 1 < n_pts; ++i)
    qedge_fixed[i] = std::max(0.0, std::max(speeds[i], speeds[i + 1]) - resolved);

  const double lambda = *std::max_element(speeds.begin(), speeds.end());
  if (opts.dt > kCflSafety * h / std::max(lambda, 1e-300) * (1.0 + 1e-9))
    throw CflViolation("dt exceeds 0.4 h / max|a|");

  auto flux_into = [&a_flat, n_pts, dim](const double* v, double* f) {
    for (int i = 0; i < n_pts; ++i)
      for (int r = 0; r < dim; ++r) {
        double sum = 0.0;
        for (int c = 0; c < dim; ++c)
          sum += a_flat[(static_cast<std::size_t>(i) * dim + r) * dim + c] * v[i * dim + c];
        f[i * dim + r] = sum;
      }
  };
  auto edge_visc = [&qedge_fixed, n_pts](const double*, double* q) {
    std::copy(qedge_fixed.begin(), qedge_fixed.end(), q);
    (void)n_pts;
  };
  const GridField reference = GridField::zeros(initial.mesh, dim);
  return run_scheme(initial, reference, opts, b_visc, flux_into, edge_visc);
}

Trajectory green_function_approx(const SystemModel& model, const GridField& baseline,
                                 double source_y, double sigma0, const EvolveOptions& opts,
                                 const Vec& direction) {
  if (sigma0 < 3.0 * baseline.mesh.spacing)
    throw ConfigError("green_function_approx requires sigma0 >= 3h");
  GridField v0 = GridField::zeros(baseline.mesh, baseline.dim);
  const double norm = 1.0 / (sigma0 * std::sqrt(2.0 * 3.14159265358979323846));
  for (int i = 0; i < v0.mesh.points; ++i) {
    const double dx = v0.mesh.x(i) - source_y;
    const double g = norm * std::exp(-dx * dx / (2.0 * sigma0 * sigma0));
    v0.set_value(i, g * direction);
  }
  // Normalize the discrete mass exactly.
  const Vec mass = v0.integral();
  const double total = mass.dot(direction) / direction.squaredNorm();
  for (double& v : v0.data) v /= total;
  return evolve_linearized(model, baseline, v0, opts);
}

GridField sample_profile(const ShockProfile& profile, const Mesh1D& mesh, double delta) {
  GridField f = GridField::zeros(mesh, profile.dim());
  for (int i = 0; i < mesh.points; ++i) f.set_value(i, profile.eval(mesh.x(i) + delta));
  return f;
}

GridField discrete_steady_profile(const SystemModel& model, const ShockProfile& profile,
                                  const Mesh1D& mesh) {
  BatchedModel bm(model);
  GridField u = sample_profile(profile, mesh);
  const int n_pts = mesh.points;
  const int dim = u.dim;
  const int interior = n_pts - 2;
  const double h = mesh.spacing;
  const Mat b_visc = constant_viscosity(model, u);
  const double b_floor = Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (b_visc + b_visc.transpose()))
                             .eigenvalues()
                             .minCoeff();
  const double resolved = 2.0 * b_floor / h;

  std::vector<double> flux(static_cast<std::size_t>(n_pts) * dim), speeds(n_pts),
      qedge(n_pts - 1);
  std::vector<Vec> residual(interior, Vec::Zero(dim));

  for (int newton = 0; newton < 30; ++newton) {
    bm.flux(u.data.data(), flux.data(), n_pts);
    bm.speed(u.data.data(), speeds.data(), n_pts);
    for (int i = 0; i + 1 < n_pts; ++i)
      qedge[i] = std::max(0.0, std::max(speeds[i], speeds[i + 1]) - resolved);

    double res_norm = 0.0;
    for (int i = 1; i <= interior; ++i) {
      const double qr = qedge[i], ql = qedge[i - 1];
      for (int c = 0; c < dim; ++c) {
        const std::size_t k = static_cast<std::size_t>(i) * dim + c;
        const double um = u.data[k - dim], uc = u.data[k], up = u.data[k + dim];
        const double conv = 0.5 * (flux[k + dim] - flux[k - dim]) / h -
                            0.5 * (qr * (up - uc) - ql * (uc - um)) / h;
        double diff = 0.0;
        for (int d = 0; d < dim; ++d) {
          const std::size_t kd = static_cast<std::size_t>(i) * dim + d;
          diff += b_visc(c, d) * (u.data[kd + dim] - 2.0 * u.data[kd] + u.data[kd - dim]);
        }
        residual[i - 1][c] = -conv + diff / (h * h);
        res_norm = std::max(res_norm, std::abs(residual[i - 1][c]));
      }
    }
    if (res_norm < 1e-13) return u;

    std::vector<Mat> lower(interior - 1), diag(interior), upper(interior - 1);
    for (int i = 1; i <= interior; ++i) {
      const Mat am = model.shockframe_jacobian(u.value(i - 1));
      const Mat ap = model.shockframe_jacobian(u.value(i + 1));
      const double qr = qedge[i], ql = qedge[i - 1];
      const Mat eye = Mat::Identity(dim, dim);
      diag[i - 1] = -0.5 * (qr + ql) / h * eye - 2.0 * b_visc / (h * h);
      if (i > 1) lower[i - 2] = (0.5 * am + 0.5 * ql * eye) / h + b_visc / (h * h);
      if (i < interior) upper[i - 1] = -(0.5 * ap - 0.5 * qr * eye) / h + b_visc / (h * h);
    }
    std::vector<Vec> step = residual;
    for (auto& s : step) s = -s;
    BlockTridiagonalSolver solver(std::move(lower), std::move(diag), std::move(upper));
    solver.solve(step);
    for (int i = 1; i <= interior; ++i)
      for (int c = 0; c < dim; ++c) u.at(i, c) += step[i - 1][c];
  }
  throw NoConvergence("discrete steady profile Newton iteration did not converge");
}

}  // namespace shock

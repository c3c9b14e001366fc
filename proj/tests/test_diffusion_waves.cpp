#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "burgers_fd_oracle.hpp"
#include "shock/diffusion_waves.hpp"
#include "shock/numerics.hpp"
#include "shock/quad.hpp"

using namespace shock;

namespace {

DiffusionWave make_wave(double mass, double speed, double beta, double gamma) {
  DiffusionWave w;
  w.mass = mass;
  w.speed = speed;
  w.beta = beta;
  w.gamma = gamma;
  w.direction = Vec::Ones(1);
  return w;
}

}  // namespace

TEST_CASE("heat-kernel limit at the origin") {
  const auto w = make_wave(1.0, 0.0, 1.0, 0.0);
  CHECK(eval_wave(w, 0.0, 0.0) == doctest::Approx(1.0 / std::sqrt(4.0 * 3.14159265358979323846))
                                      .epsilon(1e-12));
  CHECK(wave_eval(w, 0.0, 0.0).dx == doctest::Approx(0.0));
}

TEST_CASE("mass conservation by quadrature") {
  for (const auto& w : {make_wave(1.0, 0.0, 1.0, 0.0), make_wave(0.5, -2.0, 1.5, 1.0),
                        make_wave(-0.4, 1.0, 0.7, -0.8)}) {
    for (const double t : {0.0, 1.0, 10.0, 100.0}) {
      const double tau = t + 1.0;
      const double center = w.speed * tau;
      const double win = 60.0 * std::sqrt(w.beta * tau);
      const auto q = integrate([&](double x) { return eval_wave(w, x, t); }, center - win,
                               center + win, 1e-12, 1e-12);
      CHECK(q.value == doctest::Approx(w.mass).epsilon(1e-8));
    }
  }
}

TEST_CASE("errors on invalid arguments") {
  const auto w = make_wave(1.0, 0.0, 1.0, 0.0);
  CHECK_THROWS_AS(eval_wave(w, 0.0, -0.5), NonpositiveTime);
  auto bad = w;
  bad.beta = 0.0;
  CHECK_THROWS_AS(eval_wave(bad, 0.0, 1.0), NonpositiveBeta);
}

TEST_CASE("closed form satisfies the PDE at random points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(-8.0, 8.0), ut(0.1, 50.0);
  const auto w = make_wave(0.5, -1.3, 0.8, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = ux(rng), t = ut(rng);
    const auto d = wave_eval(w, x, t);
    const double residual =
        d.dt + w.speed * d.dx - w.beta * d.dxx + w.gamma * 2.0 * d.value * d.dx;
    CHECK(std::abs(residual) < 1e-8);
  }
}

TEST_CASE("analytic derivatives match centered differences") {
  const auto w = make_wave(0.5, 0.7, 1.2, 1.0);
  const double x = 1.7, t = 3.0;
  const auto d = wave_eval(w, x, t);
  double err_prev = -1.0;
  for (const double h : {1e-2, 5e-3, 2.5e-3}) {
    const double fd_x = (eval_wave(w, x + h, t) - eval_wave(w, x - h, t)) / (2.0 * h);
    const double fd_t = (eval_wave(w, x, t + h) - eval_wave(w, x, t - h)) / (2.0 * h);
    const double err = std::abs(fd_x - d.dx) + std::abs(fd_t - d.dt);
    if (err_prev > 0.0) CHECK(err < 0.3 * err_prev);  // O(h^2) contraction
    err_prev = err;
  }
}

TEST_CASE("self-similarity and Galilean covariance") {
  const auto still = make_wave(0.6, 0.0, 1.0, 1.0);
  // tau^{1/2} phi is a function of xi / sqrt(tau) only.
  const double z = 0.8;
  for (const double tau1 : {2.0, 5.0}) {
    const double tau2 = 3.7 * tau1;
    const double v1 = std::sqrt(tau1) * eval_wave(still, z * std::sqrt(tau1), tau1 - 1.0);
    const double v2 = std::sqrt(tau2) * eval_wave(still, z * std::sqrt(tau2), tau2 - 1.0);
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-10));
  }

  auto moving = still;
  moving.speed = -2.3;
  for (const double t : {0.5, 4.0}) {
    const double shift = moving.speed * (t + 1.0);
    CHECK(eval_wave(moving, 1.1 + shift, t) ==
          doctest::Approx(eval_wave(still, 1.1, t)).epsilon(1e-12));
  }
}

TEST_CASE("mass linearity in the heat case") {
  const auto base = make_wave(1.0, 0.5, 1.0, 0.0);
  auto scaled = base;
  scaled.mass = 3.7;
  for (const double x : {-1.0, 0.3, 2.0})
    CHECK(eval_wave(scaled, x, 2.0) == doctest::Approx(3.7 * eval_wave(base, x, 2.0)));
}

TEST_CASE("closed form agrees with direct PDE integration") {
  // One (gamma, m) pair here; the acceptance suite sweeps the 3x3 grid.
  const double beta = 1.0, gamma = 1.0, mass = 0.5;
  const auto w = make_wave(mass, 0.0, beta, gamma);
  const double t_check = 10.0;  // tau = 11
  const auto fd =
      shock_test::integrate_burgers_wave(beta, gamma, mass, 0.01, t_check + 1.0, 0.01);
  double sup_err = 0.0, sup_val = 0.0;
  for (std::size_t i = 0; i < fd.xi.size(); ++i) {
    // Closed form with point source at tau=0 vs FD started at tau=0.01.
    const double exact = eval_wave(w, fd.xi[i], t_check);
    sup_err = std::max(sup_err, std::abs(exact - fd.phi[i]));
    sup_val = std::max(sup_val, std::abs(exact));
  }
  CHECK(sup_err / sup_val < 1e-3);
}

TEST_CASE("composite ansatz") {
  DiffusionWaveSet empty;
  empty.dim = 1;
  CHECK(eval_composite(empty, 0.3, 2.0).cwiseAbs().maxCoeff() == 0.0);

  DiffusionWaveSet single;
  single.dim = 2;
  auto w = make_wave(0.01, -2.2802, 1.0, -2.1213);
  w.direction = Vec(2);
  w.direction << 1.0, std::sqrt(2.0);
  single.waves.push_back(w);
  const Vec val = eval_composite(single, -2.0, 1.5);
  CHECK(val[0] == doctest::Approx(eval_wave(w, -2.0, 1.5)));
  CHECK(val[1] == doctest::Approx(std::sqrt(2.0) * eval_wave(w, -2.0, 1.5)));

  // sup_x |phi| decays like (1+t)^{-1/2}.
  std::vector<double> logt, logsup;
  for (double t = 1.0; t <= 1000.0; t *= 2.0) {
    double sup = 0.0;
    const double center = w.speed * (t + 1.0);
    for (double dx = -30.0; dx <= 30.0; dx += 0.05)
      sup = std::max(sup, std::abs(eval_wave(w, center + dx * std::sqrt(t + 1.0), t)));
    logt.push_back(std::log(1.0 + t));
    logsup.push_back(std::log(sup));
  }
  const LineFit fit = fit_line(logt, logsup);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.1));
}

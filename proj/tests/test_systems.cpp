#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shock/systems.hpp"

using namespace shock;

namespace {

// Finite-difference Jacobian for the consistency invariant.
Mat fd_jacobian(const SystemModel& m, const Vec& u, double h = 1e-6) {
  Mat j(m.n, m.n);
  for (int c = 0; c < m.n; ++c) {
    Vec up = u, um = u;
    up[c] += h;
    um[c] -= h;
    j.col(c) = (m.flux(up) - m.flux(um)) / (2.0 * h);
  }
  return j;
}

}  // namespace

TEST_CASE("burgers model basics") {
  const SystemModel m = make_burgers();
  CHECK(m.n == 1);
  CHECK(m.flux(Vec::Constant(1, 1.0))[0] == doctest::Approx(0.5));
  CHECK(m.jacobian(Vec::Constant(1, 1.0))(0, 0) == doctest::Approx(1.0));
  CHECK(m.jacobian(Vec::Constant(1, -1.0))(0, 0) == doctest::Approx(-1.0));
  const Vec e = Vec::Constant(1, 1.0);
  CHECK(m.hessian(Vec::Constant(1, 0.3), e, e)[0] == doctest::Approx(1.0));
  CHECK(m.shock_speed == 0.0);
  CHECK(m.u_minus[0] == doctest::Approx(1.0));
  CHECK(m.u_plus[0] == doctest::Approx(-1.0));
}

TEST_CASE("psystem shock construction") {
  const SystemModel m = make_psystem(2.0, 1.0, 2.0);
  CHECK(m.shock_speed == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(m.u_plus[1] - m.u_minus[1] == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-12));

  // Lax 2-shock ordering of lab-frame sound speeds.
  const double c_minus = std::sqrt(2.0);   // a_2(v=1)
  const double c_plus = 0.5;               // a_2(v=2)
  CHECK(c_plus < m.shock_speed);
  CHECK(m.shock_speed < c_minus);

  // Rankine-Hugoniot residual.
  const Vec rh = m.flux(m.u_plus) - m.flux(m.u_minus) - m.shock_speed * (m.u_plus - m.u_minus);
  CHECK(rh.cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(make_psystem(2.0, 1.0, 1.0), NoAdmissibleShock);
}

TEST_CASE("jacobians match flux by finite differences") {
  std::mt19937 rng(42);
  std::normal_distribution<double> noise(0.0, 0.05);
  for (const SystemModel& m : {make_burgers(), make_psystem(2.0, 1.0, 2.0)}) {
    for (const Vec& base : {m.u_minus, m.u_plus}) {
      for (int rep = 0; rep < 5; ++rep) {
        Vec u = base;
        for (int c = 0; c < m.n; ++c) u[c] += noise(rng);
        const Mat ja = m.jacobian(u);
        const Mat jf = fd_jacobian(m, u);
        CHECK((ja - jf).cwiseAbs().maxCoeff() < 1e-6 * (1.0 + ja.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("burgers endstate data") {
  const SystemModel m = make_burgers();
  const auto d = endstate_data(m, Side::Minus, m.u_minus);
  CHECK(d.speeds[0] == doctest::Approx(1.0));
  CHECK(d.right(0, 0) == doctest::Approx(1.0));
  CHECK(d.left(0, 0) == doctest::Approx(1.0));
  CHECK(d.beta[0] == doctest::Approx(1.0));
  CHECK(d.gamma[0] == doctest::Approx(1.0));
}

TEST_CASE("psystem endstate data at v=1 in the lab frame") {
  SystemModel m = make_psystem(2.0, 1.0, 2.0);
  m.shock_speed = 0.0;  // the frozen example is stated for s = 0
  Vec u(2);
  u << 1.0, 0.0;
  const auto d = endstate_data(m, Side::Minus, u);
  CHECK(d.speeds[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(d.speeds[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // r_2 = (1, -sqrt(2)) under the first-component normalization.
  CHECK(d.right(0, 1) == doctest::Approx(1.0));
  CHECK(d.right(1, 1) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(d.gamma[1] == doctest::Approx(-3.0 / std::sqrt(2.0)).epsilon(1e-12));
  // Identity viscosity: beta_1 = beta_2 = 1.
  CHECK(d.beta[0] == doctest::Approx(1.0));
  CHECK(d.beta[1] == doctest::Approx(1.0));
}

TEST_CASE("eigen decomposition invariants") {
  for (const SystemModel& m : {make_burgers(), make_psystem(2.0, 1.0, 2.0)}) {
    for (const Side side : {Side::Minus, Side::Plus}) {
      const Vec& u = (side == Side::Minus) ? m.u_minus : m.u_plus;
      const auto d = endstate_data(m, side, u);
      const Mat lr = d.left * d.right;
      CHECK((lr - Mat::Identity(m.n, m.n)).cwiseAbs().maxCoeff() < 1e-12);
      const Mat recomposed = d.right * d.speeds.asDiagonal() * d.left;
      CHECK((recomposed - m.shockframe_jacobian(u)).cwiseAbs().maxCoeff() < 1e-10);
      // Eq. 1.14 beta against the diagonal of diag(L B R).
      const Mat lbr = d.left * m.viscosity(u) * d.right;
      for (int j = 0; j < m.n; ++j) CHECK(std::abs(d.beta[j] - lbr(j, j)) < 1e-12);
    }
  }
}

TEST_CASE("lax count and outgoing modes") {
  const SystemModel burgers = make_burgers();
  const auto bm = endstate_data(burgers, Side::Minus, burgers.u_minus);
  const auto bp = endstate_data(burgers, Side::Plus, burgers.u_plus);
  CHECK(incoming_count(bm, bp) == burgers.n + 1);
  CHECK(outgoing_modes(bm, bp).empty());

  const SystemModel ps = make_psystem(2.0, 1.0, 2.0);
  const auto pm = endstate_data(ps, Side::Minus, ps.u_minus);
  const auto pp = endstate_data(ps, Side::Plus, ps.u_plus);
  CHECK(incoming_count(pm, pp) == ps.n + 1);
  CHECK(pm.speeds[0] == doctest::Approx(-2.28024).epsilon(1e-4));
  CHECK(pp.speeds[0] == doctest::Approx(-1.36603).epsilon(1e-4));
  const auto modes = outgoing_modes(pm, pp);
  REQUIRE(modes.size() == 1);
  CHECK(modes[0].side == Side::Minus);
  CHECK(modes[0].index == 0);
}

TEST_CASE("outgoing set flips with the shock orientation") {
  const SystemModel ps = make_psystem(2.0, 1.0, 2.0);
  SystemModel flipped = ps;
  flipped.shock_speed = -ps.shock_speed;
  flipped.u_minus = ps.u_plus;
  flipped.u_plus = ps.u_minus;
  const auto orig_flux = ps.flux;
  flipped.flux = [orig_flux](const Vec& u) { return Vec(-orig_flux(u)); };
  const auto orig_jac = ps.jacobian;
  flipped.jacobian = [orig_jac](const Vec& u) { return Mat(-orig_jac(u)); };
  const auto orig_hess = ps.hessian;
  flipped.hessian = [orig_hess](const Vec& u, const Vec& a, const Vec& b) {
    return Vec(-orig_hess(u, a, b));
  };

  const auto om = endstate_data(ps, Side::Minus, ps.u_minus);
  const auto op = endstate_data(ps, Side::Plus, ps.u_plus);
  const auto fm = endstate_data(flipped, Side::Minus, flipped.u_minus);
  const auto fp = endstate_data(flipped, Side::Plus, flipped.u_plus);
  const auto orig = outgoing_modes(om, op);
  const auto flip = outgoing_modes(fm, fp);
  REQUIRE(orig.size() == flip.size());
  for (const auto& mode : orig) {
    // (-, j) maps to (+, n-1-j) in ascending-order indexing, speed negated.
    const Side want = (mode.side == Side::Minus) ? Side::Plus : Side::Minus;
    const int idx = ps.n - 1 - mode.index;
    bool found = false;
    for (const auto& f : flip) found = found || (f.side == want && f.index == idx);
    CHECK(found);
    const double a_orig =
        (mode.side == Side::Minus) ? om.speeds[mode.index] : op.speeds[mode.index];
    const double a_flip = (want == Side::Minus) ? fm.speeds[idx] : fp.speeds[idx];
    CHECK(a_flip == doctest::Approx(-a_orig).epsilon(1e-12));
  }
}

TEST_CASE("shift basis splits excess mass") {
  const SystemModel burgers = make_burgers();
  const auto bm = endstate_data(burgers, Side::Minus, burgers.u_minus);
  const auto bp = endstate_data(burgers, Side::Plus, burgers.u_plus);
  const ShiftBasis basis(bm, bp, burgers.u_plus - burgers.u_minus);
  const auto split = basis.split(Vec::Constant(1, 0.1));
  CHECK(split.masses.empty());
  CHECK(split.delta == doctest::Approx(-0.05).epsilon(1e-12));

  const SystemModel ps = make_psystem(2.0, 1.0, 2.0);
  const auto pm = endstate_data(ps, Side::Minus, ps.u_minus);
  const auto pp = endstate_data(ps, Side::Plus, ps.u_plus);
  const ShiftBasis pbasis(pm, pp, ps.u_plus - ps.u_minus);
  const Vec aligned = 0.01 * pm.r(0);
  const auto psplit = pbasis.split(aligned);
  REQUIRE(psplit.masses.size() == 1);
  CHECK(psplit.masses[0] == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(psplit.delta == doctest::Approx(0.0).epsilon(1e-12));
}

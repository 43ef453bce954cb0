#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdms/reduction.hpp"
#include "fdms/systems.hpp"

#include <cmath>

using namespace fdms;

namespace {

ReducedSystem polar_reduced(double k = 0.5, double h = 0.1) {
  const BuiltinSystem b = make_builtin("rayleigh-polar", {{"k", k}}, h);
  return make_reduced(b.system, *b.setup);
}

ReducedSystem disk_reduced() {
  const BuiltinSystem b = make_builtin("disk", {}, 0.1);
  return make_reduced(b.system, *b.setup);
}

// A consistent random window from an actual short solved run.
ReducedWindow sample_window(const ReducedSystem& rs, const Point& q0,
                            const Point& q1, const Point& q2) {
  const ReducedPoint a = upsilon(rs.setup, q0, q1);
  const ReducedPoint b = upsilon(rs.setup, q1, q2);
  return ReducedWindow{a.tau0, a.w, b.tau0, b.w, b.tau1};
}

} // namespace

TEST_CASE("reduced pair function of the angle chart is quadratic in transport") {
  const ReducedSystem rs = disk_reduced();
  // c = m r^2 / (4 h) = 2.5 at the default parameters.
  CHECK(reduce_lagrangian(rs, {0.4}, {0.3}, {}) ==
        doctest::Approx(2.5 * 0.09).epsilon(1e-13));
}

TEST_CASE("reduced pair function on the covering chart matches the closed form") {
  const double k = 0.5, h = 0.1;
  const ReducedSystem rs = polar_reduced(k, h);
  const double r0 = 1.13, eta0 = 0.33, w = 0.41, tau1 = 0.95;
  const double vr = (tau1 - r0) / h, ve = w / h, rb = 0.5 * (r0 + tau1);
  const double expect = 0.5 * h * (vr * vr + rb * rb * ve * ve) -
                        h * rb * rb * (rb * rb - 1.0) * (rb * rb - 1.0);
  // The fiber coordinate of the representative must not matter.
  CHECK(reduce_lagrangian(rs, {r0, eta0}, {w}, {tau1}) ==
        doctest::Approx(expect).epsilon(1e-13));
  CHECK(reduce_lagrangian(rs, {r0, -1.4}, {w}, {tau1}) ==
        doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("angle-chart jet values by hand") {
  const ReducedSystem rs = disk_reduced();
  const ReducedJet jet = reduced_jet(rs, {0.4}, {0.3}, {});
  CHECK(jet.value == doctest::Approx(2.5 * 0.09).epsilon(1e-13));
  // Invariance makes the base-slot derivative vanish; the transport
  // derivative is 2 c w; the force components are the constant torque legs.
  CHECK(std::abs(jet.d1.components[0]) <= 1e-12);
  CHECK(jet.d2[0] == doctest::Approx(5.0 * 0.3).epsilon(1e-12));
  CHECK(jet.f2[0] == doctest::Approx(-9.8).epsilon(1e-12));
  CHECK(jet.f1.components[0] == doctest::Approx(-19.6).epsilon(1e-12));
  CHECK(jet.d3.empty());
  CHECK(jet.f3.empty());
}

TEST_CASE("transport derivative of the reduced pair function via differences") {
  const ReducedSystem rs = polar_reduced();
  const Point q0{1.13, 0.33};
  const GroupElem w{0.41};
  const ShapePoint tau1{0.95};
  const ReducedJet jet = reduced_jet(rs, q0, w, tau1);
  const double eps = 1e-6;
  const double hi = reduce_lagrangian(rs, q0, {w[0] + eps}, tau1);
  const double lo = reduce_lagrangian(rs, q0, {w[0] - eps}, tau1);
  CHECK(jet.d2[0] == doctest::Approx((hi - lo) / (2.0 * eps)).epsilon(1e-7));

  const double hi3 = reduce_lagrangian(rs, q0, w, {tau1[0] + eps});
  const double lo3 = reduce_lagrangian(rs, q0, w, {tau1[0] - eps});
  CHECK(jet.d3[0] == doctest::Approx((hi3 - lo3) / (2.0 * eps)).epsilon(1e-7));
}

TEST_CASE("window residuals equal full-space residual pairings") {
  // The shape and group components of the reduced equations must reproduce
  // the full stepping residual paired with horizontal lifts and generators at
  // the window's representatives -- computed here entirely on the full chart.
  const ReducedSystem rs = polar_reduced();
  Rng rng(0x5eed000e);
  for (int i = 0; i < 25; ++i) {
    const Point q0 = sample_box(rs.setup.chart_domain, rng);
    const Point q1 = sample_box(rs.setup.chart_domain, rng);
    const Point q2 = sample_box(rs.setup.chart_domain, rng);
    const ReducedWindow win = sample_window(rs, q0, q1, q2);
    const ReducedResidual red = reduced_residual(rs, win);

    // Window representatives: the section point over tau_k and its neighbors.
    const Point rq1 = rs.setup.quotient.section(win.tau_k);
    const Point rq0 = lift_left(rs.setup, win.tau_prev, win.w_prev, rq1);
    const Point rq2 = f1_leg(rs.setup, rq1, win.w_k, win.tau_next);
    const Covector full = del_residual(rs.base, rq0, rq1, rq2);

    const Tangent u = rs.setup.principal.horizontal_lift(rq1, {1.0});
    const Tangent z = infinitesimal_generator(rs.setup.action, {1.0}, rq1);
    CHECK(red.phi[0] == doctest::Approx(pairing(full, u)).epsilon(1e-9));
    CHECK(red.psi[0] == doctest::Approx(pairing(full, z)).epsilon(1e-9));
  }
}

TEST_CASE("angle-chart stepping drops the transport by the constant decrement") {
  const ReducedSystem rs = disk_reduced();
  const ReducedStepResult r = reduced_step(rs, {}, {0.1}, {});
  CHECK(r.w[0] == doctest::Approx(-3.82).epsilon(1e-11));
  CHECK(r.tau_next.empty());
}

TEST_CASE("reduced march matches the pushed-down full solution") {
  const BuiltinSystem b = make_builtin("disk", {}, 0.1);
  const ReducedSystem rs = make_reduced(b.system, *b.setup);
  const DiscreteCurve full = trajectory(b.system, {0.0}, {0.1}, 6);
  const ReducedCurve pushed = reduce_trajectory(rs.setup, full);
  const ReducedCurve solved =
      solve_reduced(rs, pushed.tau0, pushed.ws[0], pushed.taus[0], 6);
  REQUIRE(solved.steps() == 6);
  for (std::size_t k = 0; k < 6; ++k)
    CHECK(solved.ws[k][0] == doctest::Approx(pushed.ws[k][0]).epsilon(1e-10));
}

TEST_CASE("covering-chart reduced march matches the pushed-down full solution") {
  const BuiltinSystem b = make_builtin("rayleigh-polar", {}, 0.1);
  const ReducedSystem rs = make_reduced(b.system, *b.setup);
  const DiscreteCurve full = trajectory(b.system, {1.2, 0.0}, {1.19, 0.03}, 8);
  const ReducedCurve pushed = reduce_trajectory(rs.setup, full);
  const ReducedCurve solved =
      solve_reduced(rs, pushed.tau0, pushed.ws[0], pushed.taus[0], 8);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(solved.ws[k][0] == doctest::Approx(pushed.ws[k][0]).epsilon(1e-9));
    CHECK(solved.taus[k][0] == doctest::Approx(pushed.taus[k][0]).epsilon(1e-9));
  }
}

TEST_CASE("section offset does not change reduced stepping") {
  // Replace the section by one sitting at a different fiber level; every
  // reduced quantity is built from invariant data, so nothing may move.
  const BuiltinSystem b = make_builtin("rayleigh-polar", {}, 0.1);
  const ReducedSystem rs = make_reduced(b.system, *b.setup);
  SymmetrySetup offset = *b.setup;
  offset.quotient.section = [](const ShapePoint& tau) {
    return Point{tau.at(0), 7.0};
  };
  const ReducedSystem rs_off = make_reduced(b.system, offset);

  const ShapePoint tau_prev{1.2}, tau_k{1.19};
  const GroupElem w_prev{0.03};
  const ReducedStepResult a = reduced_step(rs, tau_prev, w_prev, tau_k);
  const ReducedStepResult c = reduced_step(rs_off, tau_prev, w_prev, tau_k);
  CHECK(a.w[0] == doctest::Approx(c.w[0]).epsilon(1e-10));
  CHECK(a.tau_next[0] == doctest::Approx(c.tau_next[0]).epsilon(1e-10));

  const ReducedWindow win{tau_prev, w_prev, tau_k, a.w, a.tau_next};
  CHECK(norm_inf(phi_residual(rs_off, win)) <= 1e-9);
  CHECK(norm_inf(psi_residual(rs_off, win)) <= 1e-9);
}

TEST_CASE("reduced-side force evaluation agrees with the direct pairing") {
  const ReducedSystem rs = polar_reduced();
  Rng rng(0x5eed000f);
  for (int i = 0; i < 25; ++i) {
    const Point q0 = sample_box(rs.setup.chart_domain, rng);
    const Point q1 = sample_box(rs.setup.chart_domain, rng);
    const Tangent dq0 = sample_symmetric(2, 1.0, rng);
    const Tangent dq1 = sample_symmetric(2, 1.0, rng);
    const FhatCheck c = evaluate_fhat(rs, q0, q1, dq0, dq1);
    CHECK(c.reduced_value == doctest::Approx(c.direct_value).epsilon(1e-10));
  }
}

TEST_CASE("reduced-side force evaluation on purely vertical data") {
  // Vertical tangents produced by one algebra element: the shape and shape
  // tangent inputs vanish and the whole value rides on the connection slot.
  const ReducedSystem rs = polar_reduced();
  const Point q0{1.1, 0.4};
  const Point q1{0.95, 0.8};
  const double a = 0.6;
  const Tangent dq0 = infinitesimal_generator(rs.setup.action, {a}, q0);
  const Tangent dq1 = infinitesimal_generator(rs.setup.action, {a}, q1);
  const FhatCheck c = evaluate_fhat(rs, q0, q1, dq0, dq1);
  CHECK(c.reduced_value == doctest::Approx(c.direct_value).epsilon(1e-11));

  const ReducedPoint up = upsilon(rs.setup, q0, q1);
  const double direct = force_pairing(rs.base.force, q0, q1, dq0, dq1);
  CHECK(fhat_reduced(rs, up.tau0, up.w, up.tau1, {0.0}, {0.0}, {0.0}, {a}) ==
        doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("reduced force components of the covering chart") {
  // At the section representative the transport component equals the fiber
  // force leg of the plus slot paired with the vertical generator.
  const ReducedSystem rs = polar_reduced();
  const Point q0{1.1, 0.0};
  const GroupElem w{0.3};
  const ShapePoint tau1{1.0};
  const ReducedForceComponents f = reduce_force(rs, q0, w, tau1);
  const Point q1 = f1_leg(rs.setup, q0, w, tau1);
  const Covector fp = rs.base.force.plus(q0, q1);
  CHECK(f.f2[0] == doctest::Approx(fp.components[1]).epsilon(1e-11));
  REQUIRE(f.f3.size() == 1);
}

TEST_CASE("window scale floors at one and follows the data") {
  const ReducedSystem rs = disk_reduced();
  const ReducedWindow small{{}, {0.01}, {}, {0.01}, {}};
  CHECK(reduced_scale(rs, small) >= 1.0);
  const ReducedWindow big{{}, {100.0}, {}, {100.0}, {}};
  CHECK(reduced_scale(rs, big) >= 400.0);
}

TEST_CASE("mismatched dimensions are rejected when building the bundle") {
  const BuiltinSystem cart = make_builtin("rayleigh-cart", {}, 0.1);
  const BuiltinSystem disk = make_builtin("disk", {}, 0.1);
  CHECK_THROWS_AS(make_reduced(cart.system, *disk.setup), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdms/symmetry.hpp"
#include "fdms/systems.hpp"

#include <cmath>

using namespace fdms;

namespace {

SymmetrySetup polar() { return *make_builtin("rayleigh-polar", {}, 0.1).setup; }
SymmetrySetup disk() { return *make_builtin("disk", {}, 0.1).setup; }

} // namespace

TEST_CASE("pair image on the covering chart") {
  const SymmetrySetup s = polar();
  const ReducedPoint up = upsilon(s, {1.0, 0.3}, {1.1, 0.5});
  CHECK(up.tau0[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(up.w[0] == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(up.tau1[0] == doctest::Approx(1.1).epsilon(1e-14));
}

TEST_CASE("pair image is unchanged by a rigid fiber shift") {
  const SymmetrySetup s = polar();
  const GroupElem g{0.7};
  const ReducedPoint a = upsilon(s, {1.0, 0.3}, {1.1, 0.5});
  const ReducedPoint b =
      upsilon(s, s.action.act(g, {1.0, 0.3}), s.action.act(g, {1.1, 0.5}));
  CHECK(b.tau0[0] == doctest::Approx(a.tau0[0]).epsilon(1e-13));
  CHECK(b.w[0] == doctest::Approx(a.w[0]).epsilon(1e-13));
  CHECK(b.tau1[0] == doctest::Approx(a.tau1[0]).epsilon(1e-13));
}

TEST_CASE("transport leg inverts the pair image") {
  const SymmetrySetup s = polar();
  const Point q1 = f1_leg(s, {1.0, 0.3}, {0.2}, {1.1});
  CHECK(q1[0] == doctest::Approx(1.1).epsilon(1e-13));
  CHECK(q1[1] == doctest::Approx(0.5).epsilon(1e-13));

  Rng rng(0x5eed0006);
  for (int i = 0; i < 50; ++i) {
    const Point a = sample_box(s.chart_domain, rng);
    const Point b = sample_box(s.chart_domain, rng);
    const ReducedPoint up = upsilon(s, a, b);
    const Point back = f1_leg(s, a, up.w, up.tau1);
    CHECK(norm_inf(sub(back, b)) <= 1e-12);
  }
}

TEST_CASE("left lift inverts the pair image in the other slot") {
  const SymmetrySetup s = polar();
  const Point q_prev = lift_left(s, {1.0}, {0.2}, {1.1, 0.5});
  CHECK(q_prev[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(q_prev[1] == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("angle chart pair image lives entirely in the transport slot") {
  const SymmetrySetup s = disk();
  const ReducedPoint up = upsilon(s, {0.3}, {0.55});
  CHECK(up.tau0.empty());
  CHECK(up.tau1.empty());
  CHECK(up.w[0] == doctest::Approx(0.25).epsilon(1e-13));
  const Point q1 = f1_leg(s, {0.3}, {0.25}, {});
  CHECK(q1[0] == doctest::Approx(0.55).epsilon(1e-13));
}

TEST_CASE("transport slot derivatives match their difference fallbacks") {
  SymmetrySetup s = polar();
  const Point q0{1.05, -0.4}, q1{0.9, 0.7};
  const Tangent dq{0.3, -0.8};
  const Vec a1 = hol_d1(s, q0, q1, dq);
  const Vec a2 = hol_d2(s, q0, q1, dq);

  SymmetrySetup fd = s;
  fd.discrete.d1 = nullptr;
  fd.discrete.d2 = nullptr;
  const Vec b1 = hol_d1(fd, q0, q1, dq);
  const Vec b2 = hol_d2(fd, q0, q1, dq);
  CHECK(a1[0] == doctest::Approx(b1[0]).epsilon(1e-8));
  CHECK(a2[0] == doctest::Approx(b2[0]).epsilon(1e-8));
  CHECK(a1[0] == doctest::Approx(0.8).epsilon(1e-13));
  CHECK(a2[0] == doctest::Approx(-0.8).epsilon(1e-13));
}

TEST_CASE("rotation generator and difference fallback agree") {
  const GroupAction rot = make_builtin("rayleigh-cart", {}, 0.1).momentum_action;
  const Tangent v = infinitesimal_generator(rot, {2.0}, {0.3, 0.4});
  CHECK(v[0] == doctest::Approx(-0.8).epsilon(1e-13));
  CHECK(v[1] == doctest::Approx(0.6).epsilon(1e-13));

  GroupAction fd = rot;
  fd.generator = nullptr;
  const Tangent w = infinitesimal_generator(fd, {2.0}, {0.3, 0.4});
  CHECK(w[0] == doctest::Approx(-0.8).epsilon(1e-8));
  CHECK(w[1] == doctest::Approx(0.6).epsilon(1e-8));
}

TEST_CASE("pushforward of a translation is the identity on tangents") {
  const SymmetrySetup s = polar();
  const Tangent dq{0.3, -0.8};
  const Tangent out = action_pushforward(s.action, {1.3}, {1.0, 0.2}, dq);
  CHECK(norm_inf(sub(out, dq)) <= 1e-13);
}

TEST_CASE("structural audits stay at rounding level for shipped setups") {
  for (const SymmetrySetup& s : {polar(), disk()}) {
    const SetupAudit audit = audit_setup(s, 100, 0x5eed0007);
    CHECK(audit.max() <= 1e-10);
    CHECK(audit.action_freeness == 0.0);
  }
}

TEST_CASE("equivariance-breaking transport is flagged by the audit") {
  SymmetrySetup s = polar();
  s.discrete.hol = [](const Point& q0, const Point& q1) {
    return GroupElem{q1.at(1) - q0.at(1) + 0.1 * q0.at(1)};
  };
  s.discrete.d1 = nullptr;
  s.discrete.d2 = nullptr;
  const SetupAudit audit = audit_setup(s, 100, 0x5eed0008);
  CHECK(audit.discrete_equivariance > 1e-3);
}

TEST_CASE("transport level defect is flagged by the audit") {
  SymmetrySetup s = polar();
  s.discrete.level = [](const Point&) { return GroupElem{0.3}; };
  const SetupAudit audit = audit_setup(s, 100, 0x5eed0009);
  CHECK(audit.discrete_level > 0.25);
}

TEST_CASE("section that leaves the declared fiber is flagged") {
  SymmetrySetup s = polar();
  s.quotient.project = [](const Point& q) {
    return ShapePoint{q.at(0) + 0.05 * q.at(1)};
  };
  s.quotient.tangent_project = nullptr;
  const SetupAudit audit = audit_setup(s, 100, 0x5eed000a);
  CHECK(audit.quotient_invariance > 1e-3);
}

TEST_CASE("invariance audit separates invariant and drifting pair functions") {
  const SymmetrySetup s = polar();
  const ForcedDiscreteSystem sys = make_builtin("rayleigh-polar", {}, 0.1).system;
  CHECK(audit_invariance(sys.lagrangian.eval, s, 100, 0x5eed000b) <= 1e-10);

  auto broken = [&](const Point& q0, const Point& q1) {
    return sys.lagrangian.eval(q0, q1) + 0.37 * q0[1];
  };
  CHECK(audit_invariance(broken, s, 100, 0x5eed000b) > 1e-3);
}

TEST_CASE("force equivariance audit separates good and drifting legs") {
  const SymmetrySetup s = polar();
  const ForcedDiscreteSystem sys = make_builtin("rayleigh-polar", {}, 0.1).system;
  CHECK(audit_force_equivariance(sys.force, s, 100, 0x5eed000c) <= 1e-10);

  DiscreteForce broken = sys.force;
  broken.minus = [base = sys.force.minus](const Point& q0, const Point& q1) {
    Covector c = base(q0, q1);
    c.components[0] += 0.29 * q0[1];
    return c;
  };
  CHECK(audit_force_equivariance(broken, s, 100, 0x5eed000c) > 1e-3);
}

TEST_CASE("transport-leg tangent tracks difference quotients") {
  const SymmetrySetup s = polar();
  Rng rng(0x5eed000d);
  for (int i = 0; i < 20; ++i) {
    const Point q0 = sample_box(s.chart_domain, rng);
    const Point q1 = sample_box(s.chart_domain, rng);
    const ReducedPoint up = upsilon(s, q0, q1);
    const Tangent dq = sample_symmetric(2, 1.0, rng);
    const Vec dw = sample_symmetric(1, 1.0, rng);
    const Vec dt = sample_symmetric(1, 1.0, rng);
    const Tangent v = f1_tangent(s, q0, up.w, up.tau1, dq, dw, dt);
    const double eps = 1e-6;
    const Point hi = f1_leg(s, axpy(eps, dq, q0), axpy(eps, dw, up.w),
                            axpy(eps, dt, up.tau1));
    const Point lo = f1_leg(s, axpy(-eps, dq, q0), axpy(-eps, dw, up.w),
                            axpy(-eps, dt, up.tau1));
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(v[j] == doctest::Approx((hi[j] - lo[j]) / (2.0 * eps)).epsilon(1e-5));
  }
}

TEST_CASE("section failure surfaces as a section error") {
  SymmetrySetup s = polar();
  s.quotient.section = [](const ShapePoint&) {
    return Point{std::numeric_limits<double>::quiet_NaN(), 0.0};
  };
  CHECK_THROWS_AS(f1_leg(s, {1.0, 0.3}, {0.2}, {1.1}), NoSection);
}

TEST_CASE("setup validation rejects missing callbacks and bad dimensions") {
  SymmetrySetup empty;
  CHECK_THROWS_AS(validate_setup(empty), Error);

  SymmetrySetup s = polar();
  s.group_dim = 5;
  CHECK_THROWS_AS(validate_setup(s), Error);
}

TEST_CASE("averaged connection value of a vertical pair of tangents") {
  const SymmetrySetup s = polar();
  // Vertical tangents with fiber speeds 0.4 and 0.8 average to 0.6.
  const Vec xi = induced_connection(s, {1.0, 0.2}, {1.1, 0.7}, {0.0, 0.4},
                                    {0.0, 0.8});
  CHECK(xi[0] == doctest::Approx(0.6).epsilon(1e-13));
}

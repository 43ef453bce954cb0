#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdms/reconstruction.hpp"
#include "fdms/systems.hpp"

#include <cmath>

using namespace fdms;

TEST_CASE("angle-chart lift accumulates transport increments") {
  const BuiltinSystem b = make_builtin("disk", {}, 0.1);
  ReducedCurve rc;
  rc.tau0 = {};
  rc.ws = {{0.1}, {-3.82}};
  rc.taus = {{}, {}};
  const DiscreteCurve curve = reconstruct(*b.setup, rc, {0.0});
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points[0][0] == doctest::Approx(0.0));
  CHECK(curve.points[1][0] == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(curve.points[2][0] == doctest::Approx(-3.72).epsilon(1e-12));
}

TEST_CASE("fiber-shifted seed lifts to a rigidly shifted copy") {
  const BuiltinSystem b = make_builtin("disk", {}, 0.1);
  ReducedCurve rc;
  rc.tau0 = {};
  rc.ws = {{0.1}, {-3.82}};
  rc.taus = {{}, {}};
  const DiscreteCurve base = reconstruct(*b.setup, rc, {0.0});
  const DiscreteCurve moved = reconstruct(*b.setup, rc, {5.0});
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(moved.points[k][0] - base.points[k][0] ==
          doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("covering-chart round trip reproduces the solved curve exactly") {
  const BuiltinSystem b = make_builtin("rayleigh-polar", {}, 0.1);
  const Point q0{1.2, 0.3};
  const DiscreteCurve full = trajectory(b.system, q0, {1.19, 0.33}, 12);
  const ReducedCurve rc = reduce_trajectory(*b.setup, full);
  const DiscreteCurve lifted = reconstruct(*b.setup, rc, q0);
  REQUIRE(lifted.points.size() == full.points.size());
  for (std::size_t k = 0; k < full.points.size(); ++k)
    CHECK(norm_inf(sub(lifted.points[k], full.points[k])) <= 1e-10);
}

TEST_CASE("covering-chart lift from another fiber point shifts rigidly") {
  const BuiltinSystem b = make_builtin("rayleigh-polar", {}, 0.1);
  const Point q0{1.2, 0.3};
  const DiscreteCurve full = trajectory(b.system, q0, {1.19, 0.33}, 6);
  const ReducedCurve rc = reduce_trajectory(*b.setup, full);
  const DiscreteCurve moved = reconstruct(*b.setup, rc, {1.2, 2.3});
  for (std::size_t k = 0; k < full.points.size(); ++k) {
    CHECK(moved.points[k][0] ==
          doctest::Approx(full.points[k][0]).epsilon(1e-11));
    CHECK(moved.points[k][1] - full.points[k][1] ==
          doctest::Approx(2.0).epsilon(1e-11));
  }
}

TEST_CASE("seed outside the stored fiber is rejected with the deviation") {
  const BuiltinSystem b = make_builtin("rayleigh-polar", {}, 0.1);
  ReducedCurve rc;
  rc.tau0 = {1.2};
  rc.ws = {{0.1}};
  rc.taus = {{1.19}};
  bool threw = false;
  try {
    reconstruct(*b.setup, rc, {1.0, 0.0});
  } catch (const BasePointMismatch& e) {
    threw = true;
    CHECK(e.deviation == doctest::Approx(0.2).epsilon(1e-12));
  }
  CHECK(threw);
}

TEST_CASE("malformed reduced curves are rejected") {
  const BuiltinSystem b = make_builtin("rayleigh-polar", {}, 0.1);
  ReducedCurve empty;
  empty.tau0 = {1.2};
  CHECK_THROWS_AS(reconstruct(*b.setup, empty, {1.2, 0.0}), Error);

  ReducedCurve ragged;
  ragged.tau0 = {1.2};
  ragged.ws = {{0.1}, {0.2}};
  ragged.taus = {{1.19}};
  CHECK_THROWS_AS(reconstruct(*b.setup, ragged, {1.2, 0.0}), Error);
}

TEST_CASE("lift of a solved reduced curve satisfies the stepping equations") {
  const BuiltinSystem b = make_builtin("rayleigh-polar", {}, 0.1);
  const ReducedSystem rs = make_reduced(b.system, *b.setup);
  const DiscreteCurve full = trajectory(b.system, {1.2, 0.0}, {1.19, 0.03}, 10);
  const ReducedCurve rc = reduce_trajectory(rs.setup, full);
  const LiftCheck c = lift_is_trajectory(b.system, rs.setup, rc, {1.2, 0.0});
  CHECK(c.pass);
  CHECK(c.max_residual <= 1e-11);
}

TEST_CASE("corrupted reduced data lifts fine but fails the stepping check") {
  // Reconstruction only promises fidelity to the reduced data; a corrupted
  // transport entry still lifts, and the dynamics check is what flags it.
  const BuiltinSystem b = make_builtin("rayleigh-polar", {}, 0.1);
  const ReducedSystem rs = make_reduced(b.system, *b.setup);
  const DiscreteCurve full = trajectory(b.system, {1.2, 0.0}, {1.19, 0.03}, 10);
  ReducedCurve rc = reduce_trajectory(rs.setup, full);
  rc.ws[4][0] += 1e-3;
  const DiscreteCurve lifted = reconstruct(rs.setup, rc, {1.2, 0.0});
  CHECK(lifted.points.size() == full.points.size());
  const LiftCheck c = lift_is_trajectory(b.system, rs.setup, rc, {1.2, 0.0});
  CHECK_FALSE(c.pass);
  CHECK(c.max_residual > 1e-5);
}

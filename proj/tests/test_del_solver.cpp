#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdms/del.hpp"
#include "fdms/newton.hpp"
#include "fdms/systems.hpp"

#include <cmath>

using namespace fdms;

namespace {

// Scalar bisection on [lo, hi]; the bracket is validated by the caller.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((flo <= 0.0) == (fmid <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// System whose stepping equation (q2 - q1)^2 + 1 = 0 has no solution.
ForcedDiscreteSystem no_root_system() {
  ForcedDiscreteSystem sys;
  sys.dim = 1;
  sys.label = "no-root";
  sys.lagrangian.eval = [](const Point&, const Point&) { return 0.0; };
  sys.lagrangian.d1 = [](const Point& q0, const Point& q1) {
    const double d = q1[0] - q0[0];
    return Covector{{d * d + 1.0}, q0};
  };
  sys.lagrangian.d2 = [](const Point&, const Point& q1) {
    return Covector{{0.0}, q1};
  };
  sys.force.minus = [](const Point& q0, const Point&) {
    return Covector{{0.0}, q0};
  };
  sys.force.plus = [](const Point&, const Point& q1) {
    return Covector{{0.0}, q1};
  };
  return sys;
}

// System whose stepping equation is the constant 1: the difference Jacobian
// is identically zero.
ForcedDiscreteSystem flat_residual_system() {
  ForcedDiscreteSystem sys = no_root_system();
  sys.label = "flat";
  sys.lagrangian.d1 = [](const Point& q0, const Point&) {
    return Covector{{1.0}, q0};
  };
  return sys;
}

} // namespace

TEST_CASE("disk step solves the constant-decrement recurrence") {
  const ForcedDiscreteSystem sys = make_builtin("disk", {}, 0.1).system;
  const Point q2 = newton_step(sys, {0.0}, {0.1});
  CHECK(q2[0] == doctest::Approx(-3.72).epsilon(1e-12));

  const Covector r = del_residual(sys, {0.0}, {0.1}, q2);
  CHECK(std::abs(r.components[0]) <= 1e-10);
}

TEST_CASE("disk trajectory matches the recurrence over many steps") {
  const ForcedDiscreteSystem sys = make_builtin("disk", {}, 0.1).system;
  const DiscreteCurve curve = trajectory(sys, {0.0}, {0.1}, 20);
  REQUIRE(curve.points.size() == 21);
  CHECK(curve.steps() == 20);
  Vec phi{0.0, 0.1};
  for (std::size_t k = 2; k <= 20; ++k)
    phi.push_back(2.0 * phi[k - 1] - phi[k - 2] - 3.92);
  for (std::size_t k = 0; k <= 20; ++k)
    CHECK(curve.points[k][0] == doctest::Approx(phi[k]).epsilon(1e-11));
}

TEST_CASE("planar step started at rest matches a bisection oracle") {
  // Starting on the x axis with zero velocity and no damping, the step stays
  // on the axis; the surviving scalar equation is solved independently by
  // bisection and must agree with the Newton answer.
  const ForcedDiscreteSystem sys =
      make_builtin("rayleigh-cart", {{"k", 0.0}}, 0.1).system;
  const Point q0{0.1, 0.0}, q1{0.1, 0.0};

  auto axis_residual = [&](double x) {
    return del_residual(sys, q0, q1, {x, 0.0}).components[0];
  };
  REQUIRE(axis_residual(-0.5) * axis_residual(0.5) < 0.0);
  const double root = bisect(axis_residual, -0.5, 0.5);

  const Point q2 = newton_step(sys, q0, q1);
  CHECK(q2[0] == doctest::Approx(root).epsilon(1e-8));
  CHECK(std::abs(q2[1]) <= 1e-12);
}

TEST_CASE("initial guess policies reach the same root") {
  const ForcedDiscreteSystem sys = make_builtin("disk", {}, 0.1).system;
  StepConfig cfg;

  cfg.guess = InitialGuess::previous_point;
  const Point a = newton_step(sys, {0.0}, {0.1}, cfg);
  CHECK(a[0] == doctest::Approx(-3.72).epsilon(1e-11));

  cfg.guess = InitialGuess::user_supplied;
  const Point seed{-4.0};
  const Point b = newton_step(sys, {0.0}, {0.1}, cfg, &seed);
  CHECK(b[0] == doctest::Approx(-3.72).epsilon(1e-11));

  CHECK_THROWS_AS(newton_step(sys, {0.0}, {0.1}, cfg, nullptr), Error);
}

TEST_CASE("rootless stepping equation raises the iteration report") {
  const ForcedDiscreteSystem sys = no_root_system();
  StepConfig cfg;
  cfg.max_iters = 12;
  bool threw = false;
  try {
    newton_step(sys, {0.0}, {0.0}, cfg);
  } catch (const NonConvergence& e) {
    threw = true;
    CHECK(e.iterations == 12);
    CHECK(e.residual_norm >= 1.0);
    CHECK(e.step_index == -1);
  }
  CHECK(threw);
}

TEST_CASE("trajectory annotates the failing step index") {
  const ForcedDiscreteSystem sys = no_root_system();
  StepConfig cfg;
  cfg.max_iters = 8;
  bool threw = false;
  try {
    trajectory(sys, {0.0}, {0.0}, 5, cfg);
  } catch (const NonConvergence& e) {
    threw = true;
    CHECK(e.step_index == 1);
  }
  CHECK(threw);
}

TEST_CASE("flat stepping equation raises the singular-system report") {
  const ForcedDiscreteSystem sys = flat_residual_system();
  CHECK_THROWS_AS(newton_step(sys, {0.0}, {0.0}), SingularJacobian);
}

TEST_CASE("shared root finder solves a coupled pair") {
  auto residual = [](const Vec& x) {
    return Vec{x[0] * x[0] + x[1] - 3.0, x[0] - x[1] + 1.0};
  };
  const Vec x = newton_solve(residual, {2.0, 2.0}, StepConfig{});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("residual scale grows with the momenta and never drops below one") {
  const ForcedDiscreteSystem sys = make_builtin("disk", {}, 0.1).system;
  CHECK(residual_scale(sys, {0.0}, {0.0}, {0.0}) >= 1.0);
  CHECK(residual_scale(sys, {0.0}, {100.0}, {200.0}) >=
        2.0 * 2.5 * 100.0 * 0.99);
}

TEST_CASE("trajectory input validation") {
  const ForcedDiscreteSystem sys = make_builtin("disk", {}, 0.1).system;
  CHECK_THROWS_AS(trajectory(sys, {0.0}, {0.1}, 0), Error);
  CHECK_THROWS_AS(newton_step(sys, {0.0, 1.0}, {0.1}), DimensionMismatch);
}

TEST_CASE("non-finite force legs are reported as evaluation failures") {
  ForcedDiscreteSystem sys = make_builtin("disk", {}, 0.1).system;
  sys.force.minus = [](const Point& q0, const Point&) {
    return Covector{{std::numeric_limits<double>::quiet_NaN()}, q0};
  };
  CHECK_THROWS_AS(del_residual(sys, {0.0}, {0.1}, {0.2}), EvaluationError);
}

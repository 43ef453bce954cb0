#include "fdms/del.hpp"

#include "fdms/newton.hpp"

#include <cmath>

namespace fdms {

Covector del_residual(const ForcedDiscreteSystem& sys, const Point& q_prev,
                      const Point& q, const Point& q_next) {
  require_dim(q_prev, sys.dim, "del_residual q_prev");
  require_dim(q, sys.dim, "del_residual q");
  require_dim(q_next, sys.dim, "del_residual q_next");

  const Covector a = d2_lagrangian(sys.lagrangian, q_prev, q);
  const Covector b = d1_lagrangian(sys.lagrangian, q, q_next);
  const Covector fp = sys.force.plus(q_prev, q);
  const Covector fm = sys.force.minus(q, q_next);
  require_finite(fp.components, "force plus leg");
  require_finite(fm.components, "force minus leg");

  Covector r{zeros(sys.dim), q};
  for (std::size_t i = 0; i < sys.dim; ++i)
    r.components[i] =
        a.components[i] + b.components[i] + fp.components[i] + fm.components[i];
  require_finite(r.components, "discrete Euler-Lagrange residual");
  return r;
}

double residual_scale(const ForcedDiscreteSystem& sys, const Point& q_prev,
                      const Point& q, const Point& q_next) {
  double s = 1.0;
  s = std::max(s, norm_inf(d2_lagrangian(sys.lagrangian, q_prev, q).components));
  s = std::max(s, norm_inf(d1_lagrangian(sys.lagrangian, q, q_next).components));
  s = std::max(s, norm_inf(sys.force.plus(q_prev, q).components));
  s = std::max(s, norm_inf(sys.force.minus(q, q_next).components));
  return s;
}

Point newton_step(const ForcedDiscreteSystem& sys, const Point& q_prev, const Point& q,
                  const StepConfig& cfg, const Point* guess) {
  require_dim(q_prev, sys.dim, "newton_step q_prev");
  require_dim(q, sys.dim, "newton_step q");

  Point x;
  switch (cfg.guess) {
    case InitialGuess::linear_extrapolation:
      x = sub(scale(2.0, q), q_prev);
      break;
    case InitialGuess::previous_point:
      x = q;
      break;
    case InitialGuess::user_supplied:
      if (!guess) throw Error("user_supplied guess policy without a guess");
      x = *guess;
      require_dim(x, sys.dim, "newton_step guess");
      break;
  }

  auto residual = [&](const Vec& qn) {
    return del_residual(sys, q_prev, q, qn).components;
  };
  auto scale_at = [&](const Vec& qn) {
    return residual_scale(sys, q_prev, q, qn);
  };
  return newton_solve(residual, std::move(x), cfg, scale_at);
}

DiscreteCurve trajectory(const ForcedDiscreteSystem& sys, const Point& q0,
                         const Point& q1, std::size_t steps, const StepConfig& cfg) {
  if (steps < 1) throw Error("trajectory needs at least one step");
  DiscreteCurve curve;
  curve.label = sys.label;
  curve.points.reserve(steps + 1);
  curve.points.push_back(q0);
  curve.points.push_back(q1);
  for (std::size_t k = 1; k < steps; ++k) {
    try {
      curve.points.push_back(
          newton_step(sys, curve.points[k - 1], curve.points[k], cfg));
    } catch (const NonConvergence& e) {
      throw NonConvergence(e.iterations, e.residual_norm, static_cast<long>(k));
    }
  }
  // The solver loop's exit test is not trusted; certify every interior point.
  for (std::size_t k = 1; k + 1 < curve.points.size(); ++k) {
    const Point& a = curve.points[k - 1];
    const Point& b = curve.points[k];
    const Point& c = curve.points[k + 1];
    const double rnorm = norm_inf(del_residual(sys, a, b, c).components);
    if (!(rnorm <= cfg.newton_tol * residual_scale(sys, a, b, c)))
      throw NonConvergence(cfg.max_iters, rnorm, static_cast<long>(k));
  }
  return curve;
}

double action_sum(const ForcedDiscreteSystem& sys, const DiscreteCurve& curve) {
  if (curve.points.size() < 2) throw Error("action_sum needs at least two points");
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < curve.points.size(); ++k) {
    const double term = sys.lagrangian.eval(curve.points[k], curve.points[k + 1]);
    if (!std::isfinite(term)) throw EvaluationError("action term");
    s += term;
  }
  return s;
}

} // namespace fdms

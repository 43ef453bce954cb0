#pragma once

#include "fdms/system.hpp"

namespace fdms {

enum class InitialGuess { linear_extrapolation, previous_point, user_supplied };

struct StepConfig {
  double newton_tol = 1e-12;      // inf-norm residual tolerance
  int max_iters = 50;
  double jacobian_fd_step = 1e-7; // forward-difference step, scaled by |x|
  InitialGuess guess = InitialGuess::linear_extrapolation;
};

struct DiscreteCurve {
  std::vector<Point> points;
  std::string label;

  std::size_t steps() const { return points.empty() ? 0 : points.size() - 1; }
};

// Residual of the forced discrete Euler-Lagrange equation at the middle point:
//   D2 L_d(q_prev, q) + D1 L_d(q, q_next) + f_plus(q_prev, q) + f_minus(q, q_next),
// a covector at q; a trajectory zeroes it at every interior index.
Covector del_residual(const ForcedDiscreteSystem& sys, const Point& q_prev,
                      const Point& q, const Point& q_next);

// Largest inf-norm among the four residual terms, floored at 1.  Convergence
// is judged against newton_tol times this scale, so cancellation between
// large momenta is not mistaken for divergence late in a run.
double residual_scale(const ForcedDiscreteSystem& sys, const Point& q_prev,
                      const Point& q, const Point& q_next);

// Solve for q_next given (q_prev, q) by damped-free Newton with a
// forward-difference Jacobian.  guess is consulted only under user_supplied.
Point newton_step(const ForcedDiscreteSystem& sys, const Point& q_prev, const Point& q,
                  const StepConfig& cfg = {}, const Point* guess = nullptr);

// March steps-1 Newton solves from the seed pair and re-check every interior
// residual post hoc; a failed re-check reports the offending index.
DiscreteCurve trajectory(const ForcedDiscreteSystem& sys, const Point& q0,
                         const Point& q1, std::size_t steps, const StepConfig& cfg = {});

// Sum of L_d over consecutive pairs.
double action_sum(const ForcedDiscreteSystem& sys, const DiscreteCurve& curve);

} // namespace fdms

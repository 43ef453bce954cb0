#pragma once

#include "fdms/probes.hpp"
#include "fdms/types.hpp"

#include <functional>
#include <optional>
#include <string>

namespace fdms {

// Discrete Lagrangian L_d : Q x Q -> R on an n-dimensional chart.
// d1/d2 are optional analytic partial evaluators; when absent the accessors
// below fall back to central finite differences of eval with step fd_step.
struct DiscreteLagrangian {
  std::function<double(const Point&, const Point&)> eval;
  std::function<Covector(const Point&, const Point&)> d1;
  std::function<Covector(const Point&, const Point&)> d2;
  double fd_step = 1e-6;
};

// Partial derivative in the first / second slot, as a covector at that slot's
// base point.  Analytic when provided, else central differences.
Covector d1_lagrangian(const DiscreteLagrangian& ld, const Point& q0, const Point& q1);
Covector d2_lagrangian(const DiscreteLagrangian& ld, const Point& q0, const Point& q1);

// Discrete force split into its two legs: minus is a covector at q0, plus a
// covector at q1.  The total one-form pairs as minus.dq0 + plus.dq1.
struct DiscreteForce {
  std::function<Covector(const Point&, const Point&)> minus;
  std::function<Covector(const Point&, const Point&)> plus;
};

// Build the two legs from a whole one-form evaluator by zeroing the
// complementary tangent slot and probing coordinate directions.
DiscreteForce force_from_one_form(
    std::function<double(const Point&, const Point&, const Tangent&, const Tangent&)> form,
    std::size_t dim);

// Total pairing f_d(q0,q1)(dq0,dq1).
double force_pairing(const DiscreteForce& f, const Point& q0, const Point& q1,
                     const Tangent& dq0, const Tangent& dq1);

struct ForcedDiscreteSystem {
  std::size_t dim = 0;
  DiscreteLagrangian lagrangian;
  DiscreteForce force;
  std::string label;
};

// Continuous system (Q, L, f) with a fiber-linear horizontal force: the force
// callback returns a covector at q, so a vertical component cannot be
// expressed; analytic Lagrangian gradients are optional and, when present,
// propagate through the midpoint rule to analytic discrete partials.
struct ContinuousForcedSystem {
  std::size_t dim = 0;
  std::function<double(const Point&, const Vec&)> lagrangian; // L(q, qdot)
  std::function<Covector(const Point&, const Vec&)> force;    // f(q, qdot) at q
  std::function<Vec(const Point&, const Vec&)> dL_dq;         // optional
  std::function<Vec(const Point&, const Vec&)> dL_dv;         // optional
  std::string label;
};

// Midpoint chart maps Delta_h(q, qdot) = (q - h/2 qdot, q + h/2 qdot) and its
// inverse (q0, q1) -> ((q0+q1)/2, (q1-q0)/h).
std::pair<Point, Point> midpoint_pair(const Point& q, const Vec& qdot, double h);
std::pair<Point, Vec> midpoint_inverse(const Point& q0, const Point& q1, double h);

// Max deviation of Delta_h^{-1} o Delta_h and Delta_h o Delta_h^{-1} from the
// identity over random samples; identities hold exactly, so this measures
// rounding only.
double roundtrip_check(double h, std::size_t dim, int samples, std::uint64_t seed);

// Midpoint discretization: L_d = h L o Delta_h^{-1}; both force legs equal
// (h/2) f evaluated at the midpoint point/velocity (the pullback of a
// horizontal force picks up no velocity leg).
ForcedDiscreteSystem discretize_midpoint(const ContinuousForcedSystem& cs, double h);

} // namespace fdms

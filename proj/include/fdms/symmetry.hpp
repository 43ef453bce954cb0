#pragma once

#include "fdms/system.hpp"

namespace fdms {

// Action of the abelian vector group G = R^m on the n-dimensional chart.
// generator and tangent (the pushforward of act by a fixed g) are optional
// analytic evaluators with central-difference fallbacks.
struct GroupAction {
  std::size_t dim = 0;
  std::size_t group_dim = 0;
  std::function<Point(const GroupElem&, const Point&)> act;
  std::function<Tangent(const AlgebraElem&, const Point&)> generator;
  std::function<Tangent(const GroupElem&, const Point&, const Tangent&)> tangent;
  double fd_step = 1e-6;
};

Tangent infinitesimal_generator(const GroupAction& a, const AlgebraElem& xi,
                                const Point& q);
Tangent action_pushforward(const GroupAction& a, const GroupElem& g, const Point& q,
                           const Tangent& dq);

// Principal connection: form is the g-valued connection one-form, and
// horizontal_lift raises a shape tangent (length n-m) to the horizontal
// subspace at q.
struct PrincipalConnection {
  std::function<Vec(const Point&, const Tangent&)> form;
  std::function<Tangent(const Point&, const Vec&)> horizontal_lift;
};

// Discrete connection on pairs: hol(q0, q1) is the fiber-transport group
// element, level its defining section (hol(q, act(level(q), q)) = 0).  d1/d2
// are optional analytic tangents of hol in each slot.
struct DiscreteConnection {
  std::function<GroupElem(const Point&, const Point&)> hol;
  std::function<GroupElem(const Point&)> level;
  std::function<Vec(const Point&, const Point&, const Tangent&)> d1;
  std::function<Vec(const Point&, const Point&, const Tangent&)> d2;
  double fd_step = 1e-6;
};

// Global trivializing chart of Q/G with a chosen section.
struct QuotientChart {
  std::function<ShapePoint(const Point&)> project;
  std::function<Point(const ShapePoint&)> section;
  std::function<Vec(const Point&, const Tangent&)> tangent_project;
  double fd_step = 1e-6;
};

struct SymmetrySetup {
  std::size_t dim = 0;
  std::size_t group_dim = 0;
  GroupAction action;
  PrincipalConnection principal;
  DiscreteConnection discrete;
  QuotientChart quotient;
  // Optional analytic tangent of the fiber-transport leg q1(q0, w0, tau1);
  // without it the leg is differentiated by central differences, which keeps
  // full accuracy only because the leg's Newton polish is exact for affine
  // transport.
  std::function<Tangent(const Point&, const GroupElem&, const ShapePoint&,
                        const Tangent&, const Vec&, const Vec&)>
      tangent_f1;
  Box chart_domain;
  Box group_domain;

  std::size_t shape_dim() const { return dim - group_dim; }
};

void validate_setup(const SymmetrySetup& s);

Vec hol_d1(const SymmetrySetup& s, const Point& q0, const Point& q1, const Tangent& dq0);
Vec hol_d2(const SymmetrySetup& s, const Point& q0, const Point& q1, const Tangent& dq1);
Vec tangent_project(const SymmetrySetup& s, const Point& q, const Tangent& dq);

// Image of a configuration pair in the reduced bundle: (tau0, w, tau1).
struct ReducedPoint {
  ShapePoint tau0;
  GroupElem w;
  ShapePoint tau1;
};

ReducedPoint upsilon(const SymmetrySetup& s, const Point& q0, const Point& q1);

// The unique q1 with project(q1) = tau1 and hol(q0, q1) = w0, computed as
// act(g, section(tau1)) with g from the abelian transport rule and a Newton
// polish on the m-dimensional group chart.
Point f1_leg(const SymmetrySetup& s, const Point& q0, const GroupElem& w0,
             const ShapePoint& tau1);

// Tangent of f1_leg at (q0, w0, tau1) applied to (dq0, dw0, dtau1).
Tangent f1_tangent(const SymmetrySetup& s, const Point& q0, const GroupElem& w0,
                   const ShapePoint& tau1, const Tangent& dq0, const Vec& dw0,
                   const Vec& dtau1);

// The unique q_prev with project(q_prev) = tau_prev and hol(q_prev, q) = w_prev.
Point lift_left(const SymmetrySetup& s, const ShapePoint& tau_prev,
                const GroupElem& w_prev, const Point& q);

// Averaged connection one-form on pairs: (A(dq0) + A(dq1)) / 2.
Vec induced_connection(const SymmetrySetup& s, const Point& q0, const Point& q1,
                       const Tangent& dq0, const Tangent& dq1);

// Max violation of L_d(g q0, g q1) = L_d(q0, q1) over random probes.
double audit_invariance(const std::function<double(const Point&, const Point&)>& ld,
                        const SymmetrySetup& s, int samples, std::uint64_t seed);

// Max violation of f(g q0, g q1)(Tg dq0, Tg dq1) = f(q0, q1)(dq0, dq1).
double audit_force_equivariance(const DiscreteForce& f, const SymmetrySetup& s,
                                int samples, std::uint64_t seed);

// Structural axioms checked on random probes; each field is a max violation.
struct SetupAudit {
  double action_identity = 0.0;      // act(0, q) = q
  double action_composition = 0.0;   // act(g, act(g', q)) = act(g + g', q)
  double action_freeness = 0.0;      // act(g, q) != q for |g| >= 1/2 (1 on hit)
  double principal_generator = 0.0;  // form(generator(xi, q)) = xi
  double principal_vertical = 0.0;   // form(horizontal_lift(q, u)) = 0
  double principal_projects = 0.0;   // Tproject(horizontal_lift(q, u)) = u
  double discrete_equivariance = 0.0; // hol(g0 q0, g1 q1) = g1 + hol - g0
  double discrete_level = 0.0;       // hol(q, act(level(q), q)) = 0
  double quotient_section = 0.0;     // project(section(tau)) = tau
  double quotient_invariance = 0.0;  // project(act(g, q)) = project(q)
  double f1_roundtrip = 0.0;         // f1_leg(q0, hol(q0,q1), project(q1)) = q1
  double upsilon_transport = 0.0;    // upsilon(g q0, g q1) = upsilon(q0, q1)

  double max() const;
};

SetupAudit audit_setup(const SymmetrySetup& s, int samples, std::uint64_t seed);

} // namespace fdms

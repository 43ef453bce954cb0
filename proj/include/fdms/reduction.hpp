#pragma once

#include "fdms/del.hpp"
#include "fdms/symmetry.hpp"

namespace fdms {

// A G-invariant forced discrete system together with the symmetry data needed
// to push it down to the reduced bundle.
struct ReducedSystem {
  ForcedDiscreteSystem base;
  SymmetrySetup setup;
};

ReducedSystem make_reduced(ForcedDiscreteSystem base, SymmetrySetup setup);

// Reduced Lagrangian at the mixed point (q0, w0, tau1): the base L_d evaluated
// on (q0, q1) with q1 recovered by the fiber-transport leg.
double reduce_lagrangian(const ReducedSystem& rs, const Point& q0, const GroupElem& w0,
                         const ShapePoint& tau1);

// Value, partial derivatives, and reduced force components at one mixed point,
// all obtained by chain rule through the transport leg's tangent: d1/f1 pair
// with full tangents at q0, d2/f2 with group-chart increments, d3/f3 with
// shape-chart increments at tau1.
struct ReducedJet {
  double value = 0.0;
  Covector d1;
  Vec d2;
  Vec d3;
  Covector f1;
  Vec f2;
  Vec f3;
  Point q0, q1;
};

ReducedJet reduced_jet(const ReducedSystem& rs, const Point& q0, const GroupElem& w0,
                       const ShapePoint& tau1);

struct ReducedForceComponents {
  Covector f1;
  Vec f2;
  Vec f3;
};

ReducedForceComponents reduce_force(const ReducedSystem& rs, const Point& q0,
                                    const GroupElem& w0, const ShapePoint& tau1);

// Reduced-side evaluation of the force on invariant tangent data
// (dtau0, dw0, dtau1, xi) at the section representative of (tau0, w0, tau1).
double fhat_reduced(const ReducedSystem& rs, const ShapePoint& tau0,
                    const GroupElem& w0, const ShapePoint& tau1, const Vec& dtau0,
                    const Vec& dw0, const Vec& dtau1, const AlgebraElem& xi);

// Push a full-space force evaluation through the bundle isomorphism and compare
// with the direct pairing; the two agree for equivariant forces.
struct FhatCheck {
  double reduced_value = 0.0;
  double direct_value = 0.0;
};

FhatCheck evaluate_fhat(const ReducedSystem& rs, const Point& q0, const Point& q1,
                        const Tangent& dq0, const Tangent& dq1);

// One stepping window of reduced data (tau_{k-1}, w_{k-1}, tau_k, w_k, tau_{k+1}).
struct ReducedWindow {
  ShapePoint tau_prev;
  GroupElem w_prev;
  ShapePoint tau_k;
  GroupElem w_k;
  ShapePoint tau_next;
};

// Shape-direction and group-direction residuals of the reduced equations; a
// reduced trajectory zeroes both on every window.  phi has length n-m (empty
// when the group fills the whole space), psi has length m.
struct ReducedResidual {
  Vec phi;
  Vec psi;
};

ReducedResidual reduced_residual(const ReducedSystem& rs, const ReducedWindow& win);

// Largest inf-norm among the window's partial-derivative and force blocks,
// floored at 1; reduced solves and certificates gate on tol times this.
double reduced_scale(const ReducedSystem& rs, const ReducedWindow& win);

Vec phi_residual(const ReducedSystem& rs, const ReducedWindow& win);
Vec psi_residual(const ReducedSystem& rs, const ReducedWindow& win);

// Solve one reduced step for (w_k, tau_{k+1}) by Newton from the previous
// window data.
struct ReducedStepResult {
  GroupElem w;
  ShapePoint tau_next;
};

ReducedStepResult reduced_step(const ReducedSystem& rs, const ShapePoint& tau_prev,
                               const GroupElem& w_prev, const ShapePoint& tau_k,
                               const StepConfig& cfg = {});

// Reduced trajectory data: tau0 then N transport elements w_k and shape points
// tau_{k+1}, so entry k pairs (tau_k, w_k, tau_{k+1}).
struct ReducedCurve {
  ShapePoint tau0;
  std::vector<GroupElem> ws;
  std::vector<ShapePoint> taus;

  std::size_t steps() const { return ws.size(); }
  const ShapePoint& tau(std::size_t k) const { return k == 0 ? tau0 : taus.at(k - 1); }
};

// Push a full-space curve down through upsilon.
ReducedCurve reduce_trajectory(const SymmetrySetup& s, const DiscreteCurve& curve);

// March the reduced stepper from the seed triple; every solved window's
// residual is re-checked post hoc.
ReducedCurve solve_reduced(const ReducedSystem& rs, const ShapePoint& tau0,
                           const GroupElem& w0, const ShapePoint& tau1,
                           std::size_t steps, const StepConfig& cfg = {});

} // namespace fdms

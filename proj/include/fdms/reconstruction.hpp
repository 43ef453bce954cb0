#pragma once

#include "fdms/reduction.hpp"

namespace fdms {

// Lift a reduced curve back to the configuration space from a seed point whose
// shape projection must match the stored tau0 (BasePointMismatch otherwise);
// any seed in the right fiber lifts to a rigidly shifted copy of the same
// curve.  Each lifted pair is certified against the reduced data post hoc.
DiscreteCurve reconstruct(const SymmetrySetup& s, const ReducedCurve& rc,
                          const Point& q0);

struct LiftCheck {
  double max_residual = 0.0;
  bool pass = false;
};

// Reconstruct and evaluate the full-space residual on every interior point of
// the lifted curve; pass when it stays within 10x the solver tolerance.
LiftCheck lift_is_trajectory(const ForcedDiscreteSystem& sys, const SymmetrySetup& s,
                             const ReducedCurve& rc, const Point& q0,
                             const StepConfig& cfg = {});

} // namespace fdms

#pragma once

#include "fdms/del.hpp"
#include "fdms/symmetry.hpp"

namespace fdms {

// Forced discrete momentum values on a pair: the force-corrected one-step
// maps paired with the infinitesimal generator at the pair's endpoints.
double j_plus(const ForcedDiscreteSystem& sys, const GroupAction& a,
              const AlgebraElem& xi, const Point& q0, const Point& q1);
double j_minus(const ForcedDiscreteSystem& sys, const GroupAction& a,
               const AlgebraElem& xi, const Point& q0, const Point& q1);

// Pairing of the discrete force with the diagonal generator; this is the
// per-step source term of the momentum balance.
double noether_residual(const ForcedDiscreteSystem& sys, const GroupAction& a,
                        const AlgebraElem& xi, const Point& q0, const Point& q1);

struct MomentumReport {
  AlgebraElem xi;
  Vec j_plus_vals;      // one per pair, length N
  Vec j_minus_vals;     // one per pair, length N
  Vec noether_vals;     // one per pair, length N
  Vec increments_plus;  // length N-1
  Vec increments_minus; // length N-1
  double mu_estimate = 0.0;          // mean per-step increment
  double max_drift_deviation = 0.0;  // max |increment - mu_estimate|
  bool drift_uniform = false;        // deviation within drift_tol
  double transfer_violation = 0.0;   // max |J+(pair k-1) - J-(pair k)|
  double drift_tol = 0.0;
};

// Momentum bookkeeping along a solved curve: per-pair values, per-step
// increments, the mean-increment estimate, and whether the observed drift is
// uniform to within drift_tol.  transfer_violation vanishes exactly when the
// curve solves the forced discrete Euler-Lagrange equations.
MomentumReport drift_report(const ForcedDiscreteSystem& sys, const GroupAction& a,
                            const AlgebraElem& xi, const DiscreteCurve& curve,
                            double drift_tol = 1e-8);

} // namespace fdms

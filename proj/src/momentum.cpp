#include "fdms/momentum.hpp"

#include <cmath>

namespace fdms {

double j_plus(const ForcedDiscreteSystem& sys, const GroupAction& a,
              const AlgebraElem& xi, const Point& q0, const Point& q1) {
  const Covector l2 = d2_lagrangian(sys.lagrangian, q0, q1);
  const Covector fp = sys.force.plus(q0, q1);
  const Tangent gen = infinitesimal_generator(a, xi, q1);
  return dot(add(l2.components, fp.components), gen);
}

double j_minus(const ForcedDiscreteSystem& sys, const GroupAction& a,
               const AlgebraElem& xi, const Point& q0, const Point& q1) {
  const Covector l1 = d1_lagrangian(sys.lagrangian, q0, q1);
  const Covector fm = sys.force.minus(q0, q1);
  const Tangent gen = infinitesimal_generator(a, xi, q0);
  return -dot(add(l1.components, fm.components), gen);
}

double noether_residual(const ForcedDiscreteSystem& sys, const GroupAction& a,
                        const AlgebraElem& xi, const Point& q0, const Point& q1) {
  return force_pairing(sys.force, q0, q1, infinitesimal_generator(a, xi, q0),
                       infinitesimal_generator(a, xi, q1));
}

MomentumReport drift_report(const ForcedDiscreteSystem& sys, const GroupAction& a,
                            const AlgebraElem& xi, const DiscreteCurve& curve,
                            double drift_tol) {
  if (curve.points.size() < 2)
    throw Error("drift_report needs at least one pair");
  MomentumReport rep;
  rep.xi = xi;
  rep.drift_tol = drift_tol;

  const std::size_t pairs = curve.points.size() - 1;
  rep.j_plus_vals.reserve(pairs);
  rep.j_minus_vals.reserve(pairs);
  rep.noether_vals.reserve(pairs);
  for (std::size_t k = 0; k < pairs; ++k) {
    const Point& a0 = curve.points[k];
    const Point& a1 = curve.points[k + 1];
    rep.j_plus_vals.push_back(j_plus(sys, a, xi, a0, a1));
    rep.j_minus_vals.push_back(j_minus(sys, a, xi, a0, a1));
    rep.noether_vals.push_back(noether_residual(sys, a, xi, a0, a1));
  }

  for (std::size_t k = 0; k + 1 < pairs; ++k) {
    rep.increments_plus.push_back(rep.j_plus_vals[k + 1] - rep.j_plus_vals[k]);
    rep.increments_minus.push_back(rep.j_minus_vals[k + 1] - rep.j_minus_vals[k]);
    // A solved curve hands J+ of one pair to J- of the next.
    rep.transfer_violation =
        std::max(rep.transfer_violation,
                 std::abs(rep.j_plus_vals[k] - rep.j_minus_vals[k + 1]));
  }

  if (!rep.increments_plus.empty()) {
    double sum = 0.0;
    for (double v : rep.increments_plus) sum += v;
    for (double v : rep.increments_minus) sum += v;
    rep.mu_estimate =
        sum / static_cast<double>(rep.increments_plus.size() +
                                  rep.increments_minus.size());
    for (double v : rep.increments_plus)
      rep.max_drift_deviation =
          std::max(rep.max_drift_deviation, std::abs(v - rep.mu_estimate));
    for (double v : rep.increments_minus)
      rep.max_drift_deviation =
          std::max(rep.max_drift_deviation, std::abs(v - rep.mu_estimate));
    rep.drift_uniform = rep.max_drift_deviation <= drift_tol;
  }
  return rep;
}

} // namespace fdms

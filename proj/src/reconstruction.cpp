#include "fdms/reconstruction.hpp"

#include <cmath>

namespace fdms {

DiscreteCurve reconstruct(const SymmetrySetup& s, const ReducedCurve& rc,
                          const Point& q0) {
  require_dim(q0, s.dim, "reconstruct seed");
  if (rc.ws.size() != rc.taus.size())
    throw Error("reduced curve has mismatched transport/shape lengths");
  if (rc.ws.empty()) throw Error("reconstruct needs at least one reduced step");

  const double dev = norm_inf(sub(s.quotient.project(q0), rc.tau0));
  if (dev > 1e-10) throw BasePointMismatch(dev);

  DiscreteCurve curve;
  curve.points.reserve(rc.ws.size() + 1);
  curve.points.push_back(q0);
  for (std::size_t k = 0; k < rc.ws.size(); ++k)
    curve.points.push_back(f1_leg(s, curve.points[k], rc.ws[k], rc.taus[k]));

  // Certify each lifted pair against the reduced data it came from.
  for (std::size_t k = 0; k < rc.ws.size(); ++k) {
    const ReducedPoint up = upsilon(s, curve.points[k], curve.points[k + 1]);
    double err = norm_inf(sub(up.w, rc.ws[k]));
    err = std::max(err, norm_inf(sub(up.tau1, rc.taus[k])));
    if (err > 1e-8)
      throw Error("reconstructed pair " + std::to_string(k) +
                  " fails the transport certificate (deviation " +
                  std::to_string(err) + ")");
  }
  return curve;
}

LiftCheck lift_is_trajectory(const ForcedDiscreteSystem& sys, const SymmetrySetup& s,
                             const ReducedCurve& rc, const Point& q0,
                             const StepConfig& cfg) {
  const DiscreteCurve curve = reconstruct(s, rc, q0);
  LiftCheck c;
  for (std::size_t k = 1; k + 1 < curve.points.size(); ++k) {
    const Point& a = curve.points[k - 1];
    const Point& b = curve.points[k];
    const Point& d = curve.points[k + 1];
    const double rnorm = norm_inf(del_residual(sys, a, b, d).components) /
                         residual_scale(sys, a, b, d);
    c.max_residual = std::max(c.max_residual, rnorm);
  }
  c.pass = c.max_residual <= 10.0 * cfg.newton_tol;
  return c;
}

} // namespace fdms

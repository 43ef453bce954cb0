#include "fdms/reduction.hpp"

#include "fdms/newton.hpp"

#include <cmath>

namespace fdms {

ReducedSystem make_reduced(ForcedDiscreteSystem base, SymmetrySetup setup) {
  validate_setup(setup);
  if (base.dim != setup.dim)
    throw Error("base system and symmetry setup dimensions disagree");
  return ReducedSystem{std::move(base), std::move(setup)};
}

double reduce_lagrangian(const ReducedSystem& rs, const Point& q0, const GroupElem& w0,
                         const ShapePoint& tau1) {
  const Point q1 = f1_leg(rs.setup, q0, w0, tau1);
  const double v = rs.base.lagrangian.eval(q0, q1);
  if (!std::isfinite(v)) throw EvaluationError("reduced Lagrangian");
  return v;
}

ReducedJet reduced_jet(const ReducedSystem& rs, const Point& q0, const GroupElem& w0,
                       const ShapePoint& tau1) {
  const SymmetrySetup& s = rs.setup;
  const std::size_t n = s.dim, m = s.group_dim, r = s.shape_dim();

  ReducedJet jet;
  jet.q0 = q0;
  jet.q1 = f1_leg(s, q0, w0, tau1);
  jet.value = rs.base.lagrangian.eval(q0, jet.q1);
  if (!std::isfinite(jet.value)) throw EvaluationError("reduced Lagrangian");

  const Covector l1 = d1_lagrangian(rs.base.lagrangian, q0, jet.q1);
  const Covector l2 = d2_lagrangian(rs.base.lagrangian, q0, jet.q1);
  const Covector fm = rs.base.force.minus(q0, jet.q1);
  const Covector fp = rs.base.force.plus(q0, jet.q1);

  jet.d1 = Covector{zeros(n), q0};
  jet.f1 = Covector{zeros(n), q0};
  for (std::size_t i = 0; i < n; ++i) {
    const Tangent v = f1_tangent(s, q0, w0, tau1, basis(n, i), zeros(m), zeros(r));
    jet.d1.components[i] = l1.components[i] + dot(l2.components, v);
    jet.f1.components[i] = fm.components[i] + dot(fp.components, v);
  }
  jet.d2 = zeros(m);
  jet.f2 = zeros(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Tangent v = f1_tangent(s, q0, w0, tau1, zeros(n), basis(m, j), zeros(r));
    jet.d2[j] = dot(l2.components, v);
    jet.f2[j] = dot(fp.components, v);
  }
  jet.d3 = zeros(r);
  jet.f3 = zeros(r);
  for (std::size_t j = 0; j < r; ++j) {
    const Tangent v = f1_tangent(s, q0, w0, tau1, zeros(n), zeros(m), basis(r, j));
    jet.d3[j] = dot(l2.components, v);
    jet.f3[j] = dot(fp.components, v);
  }
  return jet;
}

ReducedForceComponents reduce_force(const ReducedSystem& rs, const Point& q0,
                                    const GroupElem& w0, const ShapePoint& tau1) {
  const ReducedJet jet = reduced_jet(rs, q0, w0, tau1);
  return ReducedForceComponents{jet.f1, jet.f2, jet.f3};
}

double fhat_reduced(const ReducedSystem& rs, const ShapePoint& tau0,
                    const GroupElem& w0, const ShapePoint& tau1, const Vec& dtau0,
                    const Vec& dw0, const Vec& dtau1, const AlgebraElem& xi) {
  const SymmetrySetup& s = rs.setup;
  const Point rq0 = s.quotient.section(tau0);
  const Point rq1 = f1_leg(s, rq0, w0, tau1);

  // Reassemble the representative tangent at the section point: horizontal
  // part from dtau0, vertical part fixed by the averaged-connection value xi.
  const Tangent hl = s.principal.horizontal_lift(rq0, dtau0);
  const Tangent v1 = f1_tangent(s, rq0, w0, tau1, hl, dw0, dtau1);
  const AlgebraElem a = sub(xi, scale(0.5, s.principal.form(rq1, v1)));
  const Tangent dq0 = add(hl, infinitesimal_generator(s.action, a, rq0));

  const ReducedJet jet = reduced_jet(rs, rq0, w0, tau1);
  double out = pairing(jet.f1, dq0) + dot(jet.f2, dw0);
  if (!jet.f3.empty()) out += dot(jet.f3, dtau1);
  return out;
}

FhatCheck evaluate_fhat(const ReducedSystem& rs, const Point& q0, const Point& q1,
                        const Tangent& dq0, const Tangent& dq1) {
  const SymmetrySetup& s = rs.setup;
  const ReducedPoint up = upsilon(s, q0, q1);
  const Vec dtau0 = tangent_project(s, q0, dq0);
  const Vec dtau1 = tangent_project(s, q1, dq1);
  const Vec dw0 = add(hol_d1(s, q0, q1, dq0), hol_d2(s, q0, q1, dq1));
  const AlgebraElem xi = induced_connection(s, q0, q1, dq0, dq1);

  FhatCheck c;
  c.reduced_value = fhat_reduced(rs, up.tau0, up.w, up.tau1, dtau0, dw0, dtau1, xi);
  c.direct_value = force_pairing(rs.base.force, q0, q1, dq0, dq1);
  return c;
}

namespace {

struct WindowReps {
  Point q_prev, q_k, q_next;
  ReducedJet cur, prev;
};

WindowReps window_reps(const ReducedSystem& rs, const ReducedWindow& win) {
  const SymmetrySetup& s = rs.setup;
  WindowReps r;
  r.q_k = s.quotient.section(win.tau_k);
  r.q_prev = lift_left(s, win.tau_prev, win.w_prev, r.q_k);
  r.cur = reduced_jet(rs, r.q_k, win.w_k, win.tau_next);
  r.prev = reduced_jet(rs, r.q_prev, win.w_prev, win.tau_k);
  r.q_next = r.cur.q1;
  return r;
}

} // namespace

ReducedResidual reduced_residual(const ReducedSystem& rs, const ReducedWindow& win) {
  const SymmetrySetup& s = rs.setup;
  const std::size_t m = s.group_dim, nshape = s.shape_dim();
  const WindowReps rep = window_reps(rs, win);

  ReducedResidual out;
  out.phi = zeros(nshape);
  for (std::size_t j = 0; j < nshape; ++j) {
    const Tangent u = s.principal.horizontal_lift(rep.q_k, basis(nshape, j));
    const Vec hd_cur = hol_d1(s, rep.q_k, rep.q_next, u);
    const Vec hd_prev = hol_d2(s, rep.q_prev, rep.q_k, u);
    out.phi[j] = pairing(rep.cur.d1, u) + rep.prev.d3[j] +
                 dot(rep.cur.d2, hd_cur) + dot(rep.prev.d2, hd_prev) +
                 pairing(rep.cur.f1, u) + rep.prev.f3[j] +
                 dot(rep.cur.f2, hd_cur) + dot(rep.prev.f2, hd_prev);
  }

  out.psi = zeros(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Tangent z = infinitesimal_generator(s.action, basis(m, i), rep.q_k);
    const Vec hd_cur = hol_d1(s, rep.q_k, rep.q_next, z);
    const Vec hd_prev = hol_d2(s, rep.q_prev, rep.q_k, z);
    out.psi[i] = rep.prev.d2[i] - rep.cur.d2[i] + pairing(rep.cur.f1, z) +
                 dot(rep.cur.f2, hd_cur) + dot(rep.prev.f2, hd_prev);
  }
  require_finite(out.phi, "shape-direction reduced residual");
  require_finite(out.psi, "group-direction reduced residual");
  return out;
}

double reduced_scale(const ReducedSystem& rs, const ReducedWindow& win) {
  const WindowReps rep = window_reps(rs, win);
  double s = 1.0;
  for (const Vec* v :
       {&rep.cur.d1.components, &rep.cur.d2, &rep.prev.d2, &rep.prev.d3,
        &rep.cur.f1.components, &rep.cur.f2, &rep.prev.f2, &rep.prev.f3})
    if (!v->empty()) s = std::max(s, norm_inf(*v));
  return s;
}

Vec phi_residual(const ReducedSystem& rs, const ReducedWindow& win) {
  return reduced_residual(rs, win).phi;
}

Vec psi_residual(const ReducedSystem& rs, const ReducedWindow& win) {
  return reduced_residual(rs, win).psi;
}

ReducedStepResult reduced_step(const ReducedSystem& rs, const ShapePoint& tau_prev,
                               const GroupElem& w_prev, const ShapePoint& tau_k,
                               const StepConfig& cfg) {
  const std::size_t m = rs.setup.group_dim, nshape = rs.setup.shape_dim();
  require_dim(tau_prev, nshape, "reduced_step tau_prev");
  require_dim(w_prev, m, "reduced_step w_prev");
  require_dim(tau_k, nshape, "reduced_step tau_k");

  auto residual = [&](const Vec& x) {
    ReducedWindow win;
    win.tau_prev = tau_prev;
    win.w_prev = w_prev;
    win.tau_k = tau_k;
    win.w_k = Vec(x.begin(), x.begin() + m);
    win.tau_next = Vec(x.begin() + m, x.end());
    const ReducedResidual r = reduced_residual(rs, win);
    return concat(r.psi, r.phi);
  };

  const Vec guess = concat(w_prev, sub(scale(2.0, tau_k), tau_prev));
  auto scale_at = [&](const Vec& x) {
    const ReducedWindow win{tau_prev, w_prev, tau_k,
                            Vec(x.begin(), x.begin() + m),
                            Vec(x.begin() + m, x.end())};
    return reduced_scale(rs, win);
  };
  const Vec x = newton_solve(residual, guess, cfg, scale_at);
  return ReducedStepResult{Vec(x.begin(), x.begin() + m), Vec(x.begin() + m, x.end())};
}

ReducedCurve reduce_trajectory(const SymmetrySetup& s, const DiscreteCurve& curve) {
  if (curve.points.size() < 2)
    throw Error("reduce_trajectory needs at least two points");
  ReducedCurve rc;
  rc.tau0 = s.quotient.project(curve.points.front());
  for (std::size_t k = 0; k + 1 < curve.points.size(); ++k) {
    const ReducedPoint up = upsilon(s, curve.points[k], curve.points[k + 1]);
    rc.ws.push_back(up.w);
    rc.taus.push_back(up.tau1);
  }
  return rc;
}

ReducedCurve solve_reduced(const ReducedSystem& rs, const ShapePoint& tau0,
                           const GroupElem& w0, const ShapePoint& tau1,
                           std::size_t steps, const StepConfig& cfg) {
  if (steps < 1) throw Error("solve_reduced needs at least one step");
  ReducedCurve rc;
  rc.tau0 = tau0;
  rc.ws.push_back(w0);
  rc.taus.push_back(tau1);
  for (std::size_t k = 1; k < steps; ++k) {
    try {
      const ReducedStepResult r =
          reduced_step(rs, rc.tau(k - 1), rc.ws[k - 1], rc.tau(k), cfg);
      rc.ws.push_back(r.w);
      rc.taus.push_back(r.tau_next);
    } catch (const NonConvergence& e) {
      throw NonConvergence(e.iterations, e.residual_norm, static_cast<long>(k));
    }
  }
  // Residual certificate over every solved window.
  for (std::size_t k = 1; k < steps; ++k) {
    const ReducedWindow win{rc.tau(k - 1), rc.ws[k - 1], rc.tau(k), rc.ws[k],
                            rc.tau(k + 1)};
    const ReducedResidual r = reduced_residual(rs, win);
    const double rnorm = std::max(norm_inf(r.phi), norm_inf(r.psi));
    if (!(rnorm <= cfg.newton_tol * reduced_scale(rs, win)))
      throw NonConvergence(cfg.max_iters, rnorm, static_cast<long>(k));
  }
  return rc;
}

} // namespace fdms

#include "fdms/symmetry.hpp"

#include "fdms/newton.hpp"

#include <cmath>

namespace fdms {

Tangent infinitesimal_generator(const GroupAction& a, const AlgebraElem& xi,
                                const Point& q) {
  require_dim(xi, a.group_dim, "generator algebra element");
  if (a.generator) return a.generator(xi, q);
  // exp(t xi) = t xi for a vector group, so differentiate act along the ray.
  const double eps = a.fd_step;
  const Point hi = a.act(scale(eps, xi), q);
  const Point lo = a.act(scale(-eps, xi), q);
  return scale(1.0 / (2.0 * eps), sub(hi, lo));
}

Tangent action_pushforward(const GroupAction& a, const GroupElem& g, const Point& q,
                           const Tangent& dq) {
  require_dim(g, a.group_dim, "pushforward group element");
  require_dim(dq, q.size(), "pushforward tangent");
  if (a.tangent) return a.tangent(g, q, dq);
  const double eps = a.fd_step;
  const Point hi = a.act(g, axpy(eps, dq, q));
  const Point lo = a.act(g, axpy(-eps, dq, q));
  return scale(1.0 / (2.0 * eps), sub(hi, lo));
}

void validate_setup(const SymmetrySetup& s) {
  if (s.group_dim == 0 || s.group_dim > s.dim)
    throw Error("symmetry setup needs 0 < group_dim <= dim");
  if (s.action.dim != s.dim || s.action.group_dim != s.group_dim)
    throw Error("group action dimensions disagree with setup");
  if (!s.action.act || !s.principal.form || !s.principal.horizontal_lift ||
      !s.discrete.hol || !s.quotient.project || !s.quotient.section)
    throw Error("symmetry setup missing a required callback");
  if (s.chart_domain.dim() != s.dim || s.group_domain.dim() != s.group_dim)
    throw Error("symmetry setup probe domains have wrong dimensions");
}

Vec hol_d1(const SymmetrySetup& s, const Point& q0, const Point& q1,
           const Tangent& dq0) {
  if (s.discrete.d1) return s.discrete.d1(q0, q1, dq0);
  const double eps = s.discrete.fd_step;
  const GroupElem hi = s.discrete.hol(axpy(eps, dq0, q0), q1);
  const GroupElem lo = s.discrete.hol(axpy(-eps, dq0, q0), q1);
  return scale(1.0 / (2.0 * eps), sub(hi, lo));
}

Vec hol_d2(const SymmetrySetup& s, const Point& q0, const Point& q1,
           const Tangent& dq1) {
  if (s.discrete.d2) return s.discrete.d2(q0, q1, dq1);
  const double eps = s.discrete.fd_step;
  const GroupElem hi = s.discrete.hol(q0, axpy(eps, dq1, q1));
  const GroupElem lo = s.discrete.hol(q0, axpy(-eps, dq1, q1));
  return scale(1.0 / (2.0 * eps), sub(hi, lo));
}

Vec tangent_project(const SymmetrySetup& s, const Point& q, const Tangent& dq) {
  if (s.quotient.tangent_project) return s.quotient.tangent_project(q, dq);
  const double eps = s.quotient.fd_step;
  const ShapePoint hi = s.quotient.project(axpy(eps, dq, q));
  const ShapePoint lo = s.quotient.project(axpy(-eps, dq, q));
  return scale(1.0 / (2.0 * eps), sub(hi, lo));
}

ReducedPoint upsilon(const SymmetrySetup& s, const Point& q0, const Point& q1) {
  require_dim(q0, s.dim, "upsilon q0");
  require_dim(q1, s.dim, "upsilon q1");
  ReducedPoint r;
  r.tau0 = s.quotient.project(q0);
  r.w = s.discrete.hol(q0, q1);
  r.tau1 = s.quotient.project(q1);
  require_dim(r.w, s.group_dim, "upsilon transport element");
  require_finite(r.w, "upsilon transport element");
  return r;
}

namespace {

// Solve hol-constraint equations on the group chart.  The abelian transport
// rule makes the initial guess exact up to rounding; the Newton polish keeps
// the function honest for imperfectly equivariant user callbacks.
GroupElem polish_group_solve(const std::function<Vec(const GroupElem&)>& residual,
                             GroupElem guess) {
  StepConfig cfg;
  cfg.newton_tol = 1e-13;
  cfg.max_iters = 25;
  return newton_solve(residual, std::move(guess), cfg);
}

} // namespace

Point f1_leg(const SymmetrySetup& s, const Point& q0, const GroupElem& w0,
             const ShapePoint& tau1) {
  require_dim(q0, s.dim, "f1_leg q0");
  require_dim(w0, s.group_dim, "f1_leg transport element");
  require_dim(tau1, s.shape_dim(), "f1_leg shape point");
  const Point s1 = s.quotient.section(tau1);
  require_dim(s1, s.dim, "section image");
  if (!all_finite(s1)) throw NoSection("section returned non-finite point");
  const GroupElem g0 = sub(w0, s.discrete.hol(q0, s1));
  const GroupElem g = polish_group_solve(
      [&](const GroupElem& gg) {
        return sub(s.discrete.hol(q0, s.action.act(gg, s1)), w0);
      },
      g0);
  return s.action.act(g, s1);
}

Tangent f1_tangent(const SymmetrySetup& s, const Point& q0, const GroupElem& w0,
                   const ShapePoint& tau1, const Tangent& dq0, const Vec& dw0,
                   const Vec& dtau1) {
  if (s.tangent_f1) return s.tangent_f1(q0, w0, tau1, dq0, dw0, dtau1);
  const double eps = 1e-6;
  auto at = [&](double t) {
    return f1_leg(s, axpy(t, dq0, q0), axpy(t, dw0, w0), axpy(t, dtau1, tau1));
  };
  return scale(1.0 / (2.0 * eps), sub(at(eps), at(-eps)));
}

Point lift_left(const SymmetrySetup& s, const ShapePoint& tau_prev,
                const GroupElem& w_prev, const Point& q) {
  require_dim(tau_prev, s.shape_dim(), "lift_left shape point");
  require_dim(w_prev, s.group_dim, "lift_left transport element");
  require_dim(q, s.dim, "lift_left right endpoint");
  const Point sp = s.quotient.section(tau_prev);
  if (!all_finite(sp)) throw NoSection("section returned non-finite point");
  const GroupElem g0 = sub(s.discrete.hol(sp, q), w_prev);
  const GroupElem g = polish_group_solve(
      [&](const GroupElem& gg) {
        return sub(s.discrete.hol(s.action.act(gg, sp), q), w_prev);
      },
      g0);
  return s.action.act(g, sp);
}

Vec induced_connection(const SymmetrySetup& s, const Point& q0, const Point& q1,
                       const Tangent& dq0, const Tangent& dq1) {
  const Vec a0 = s.principal.form(q0, dq0);
  const Vec a1 = s.principal.form(q1, dq1);
  return scale(0.5, add(a0, a1));
}

double audit_invariance(const std::function<double(const Point&, const Point&)>& ld,
                        const SymmetrySetup& s, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Point q0 = sample_box(s.chart_domain, rng);
    const Point q1 = sample_box(s.chart_domain, rng);
    const GroupElem g = sample_box(s.group_domain, rng);
    const double a = ld(q0, q1);
    const double b = ld(s.action.act(g, q0), s.action.act(g, q1));
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

double audit_force_equivariance(const DiscreteForce& f, const SymmetrySetup& s,
                                int samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Point q0 = sample_box(s.chart_domain, rng);
    const Point q1 = sample_box(s.chart_domain, rng);
    const GroupElem g = sample_box(s.group_domain, rng);
    const Tangent d0 = sample_symmetric(s.dim, 1.0, rng);
    const Tangent d1 = sample_symmetric(s.dim, 1.0, rng);
    const double a = force_pairing(f, q0, q1, d0, d1);
    const double b = force_pairing(f, s.action.act(g, q0), s.action.act(g, q1),
                                   action_pushforward(s.action, g, q0, d0),
                                   action_pushforward(s.action, g, q1, d1));
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

double SetupAudit::max() const {
  double m = action_identity;
  for (double v : {action_composition, action_freeness, principal_generator,
                   principal_vertical, principal_projects, discrete_equivariance,
                   discrete_level, quotient_section, quotient_invariance,
                   f1_roundtrip, upsilon_transport})
    m = std::max(m, v);
  return m;
}

SetupAudit audit_setup(const SymmetrySetup& s, int samples, std::uint64_t seed) {
  validate_setup(s);
  Rng rng(seed);
  SetupAudit a;
  const std::size_t m = s.group_dim;
  const std::size_t r = s.shape_dim();
  for (int i = 0; i < samples; ++i) {
    const Point q0 = sample_box(s.chart_domain, rng);
    const Point q1 = sample_box(s.chart_domain, rng);
    const GroupElem g0 = sample_box(s.group_domain, rng);
    const GroupElem g1 = sample_box(s.group_domain, rng);
    const AlgebraElem xi = sample_symmetric(m, 1.0, rng);
    const Vec u = sample_symmetric(r, 1.0, rng);

    a.action_identity = std::max(
        a.action_identity, norm_inf(sub(s.action.act(zeros(m), q0), q0)));
    a.action_composition = std::max(
        a.action_composition, norm_inf(sub(s.action.act(g0, s.action.act(g1, q0)),
                                           s.action.act(add(g0, g1), q0))));
    GroupElem big = g0;
    for (double& x : big) x = (x >= 0.0 ? 0.5 : -0.5) + x;
    if (norm_inf(sub(s.action.act(big, q0), q0)) < 1e-9)
      a.action_freeness = 1.0;

    a.principal_generator = std::max(
        a.principal_generator,
        norm_inf(sub(s.principal.form(q0, infinitesimal_generator(s.action, xi, q0)),
                     xi)));
    const Tangent hl = s.principal.horizontal_lift(q0, u);
    a.principal_vertical =
        std::max(a.principal_vertical, norm_inf(s.principal.form(q0, hl)));
    a.principal_projects = std::max(
        a.principal_projects, norm_inf(sub(tangent_project(s, q0, hl), u)));

    const GroupElem hol = s.discrete.hol(q0, q1);
    const GroupElem lhs =
        s.discrete.hol(s.action.act(g0, q0), s.action.act(g1, q1));
    a.discrete_equivariance = std::max(
        a.discrete_equivariance, norm_inf(sub(lhs, sub(add(g1, hol), g0))));
    if (s.discrete.level) {
      const GroupElem lv = s.discrete.level(q0);
      a.discrete_level = std::max(
          a.discrete_level,
          norm_inf(s.discrete.hol(q0, s.action.act(lv, q0))));
    }

    const ShapePoint tau = s.quotient.project(q0);
    a.quotient_section = std::max(
        a.quotient_section,
        norm_inf(sub(s.quotient.project(s.quotient.section(tau)), tau)));
    a.quotient_invariance = std::max(
        a.quotient_invariance,
        norm_inf(sub(s.quotient.project(s.action.act(g0, q0)), tau)));

    const ReducedPoint up = upsilon(s, q0, q1);
    a.f1_roundtrip = std::max(
        a.f1_roundtrip, norm_inf(sub(f1_leg(s, q0, up.w, up.tau1), q1)));
    const ReducedPoint ug = upsilon(s, s.action.act(g0, q0), s.action.act(g0, q1));
    double tv = norm_inf(sub(ug.w, up.w));
    tv = std::max(tv, norm_inf(sub(ug.tau0, up.tau0)));
    tv = std::max(tv, norm_inf(sub(ug.tau1, up.tau1)));
    a.upsilon_transport = std::max(a.upsilon_transport, tv);
  }
  return a;
}

} // namespace fdms

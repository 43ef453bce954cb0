#include "fdms/system.hpp"

#include <cmath>

namespace fdms {

namespace {

// Central difference of a scalar function of one chart slot.
Vec central_grad(const std::function<double(const Point&)>& f, const Point& q,
                 double step) {
  Vec g(q.size());
  Point lo = q, hi = q;
  for (std::size_t i = 0; i < q.size(); ++i) {
    hi[i] = q[i] + step;
    lo[i] = q[i] - step;
    g[i] = (f(hi) - f(lo)) / (2.0 * step);
    hi[i] = q[i];
    lo[i] = q[i];
  }
  return g;
}

} // namespace

Covector d1_lagrangian(const DiscreteLagrangian& ld, const Point& q0, const Point& q1) {
  require_dim(q1, q0.size(), "d1_lagrangian second point");
  Covector p;
  if (ld.d1) {
    p = ld.d1(q0, q1);
  } else {
    p.components = central_grad([&](const Point& q) { return ld.eval(q, q1); }, q0,
                                ld.fd_step);
    p.base = q0;
  }
  require_finite(p.components, "d1_lagrangian(" + std::to_string(q0.size()) + "-dim)");
  return p;
}

Covector d2_lagrangian(const DiscreteLagrangian& ld, const Point& q0, const Point& q1) {
  require_dim(q1, q0.size(), "d2_lagrangian second point");
  Covector p;
  if (ld.d2) {
    p = ld.d2(q0, q1);
  } else {
    p.components = central_grad([&](const Point& q) { return ld.eval(q0, q); }, q1,
                                ld.fd_step);
    p.base = q1;
  }
  require_finite(p.components, "d2_lagrangian(" + std::to_string(q0.size()) + "-dim)");
  return p;
}

DiscreteForce force_from_one_form(
    std::function<double(const Point&, const Point&, const Tangent&, const Tangent&)> form,
    std::size_t dim) {
  DiscreteForce f;
  f.minus = [form, dim](const Point& q0, const Point& q1) {
    Covector p{zeros(dim), q0};
    const Tangent z = zeros(dim);
    for (std::size_t i = 0; i < dim; ++i)
      p.components[i] = form(q0, q1, basis(dim, i), z);
    return p;
  };
  f.plus = [form, dim](const Point& q0, const Point& q1) {
    Covector p{zeros(dim), q1};
    const Tangent z = zeros(dim);
    for (std::size_t i = 0; i < dim; ++i)
      p.components[i] = form(q0, q1, z, basis(dim, i));
    return p;
  };
  return f;
}

double force_pairing(const DiscreteForce& f, const Point& q0, const Point& q1,
                     const Tangent& dq0, const Tangent& dq1) {
  return pairing(f.minus(q0, q1), dq0) + pairing(f.plus(q0, q1), dq1);
}

std::pair<Point, Point> midpoint_pair(const Point& q, const Vec& qdot, double h) {
  return {axpy(-0.5 * h, qdot, q), axpy(0.5 * h, qdot, q)};
}

std::pair<Point, Vec> midpoint_inverse(const Point& q0, const Point& q1, double h) {
  return {scale(0.5, add(q0, q1)), scale(1.0 / h, sub(q1, q0))};
}

double roundtrip_check(double h, std::size_t dim, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point q = sample_symmetric(dim, 2.0, rng);
    const Vec v = sample_symmetric(dim, 2.0, rng);
    const auto [q0, q1] = midpoint_pair(q, v, h);
    const auto [qb, vb] = midpoint_inverse(q0, q1, h);
    worst = std::max(worst, norm_inf(sub(qb, q)));
    worst = std::max(worst, norm_inf(sub(vb, v)));
    const Point p0 = sample_symmetric(dim, 2.0, rng);
    const Point p1 = sample_symmetric(dim, 2.0, rng);
    const auto [qm, vm] = midpoint_inverse(p0, p1, h);
    const auto [r0, r1] = midpoint_pair(qm, vm, h);
    worst = std::max(worst, norm_inf(sub(r0, p0)));
    worst = std::max(worst, norm_inf(sub(r1, p1)));
  }
  return worst;
}

ForcedDiscreteSystem discretize_midpoint(const ContinuousForcedSystem& cs, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error("step size must be positive");
  ForcedDiscreteSystem sys;
  sys.dim = cs.dim;
  sys.label = cs.label;

  const auto lag = cs.lagrangian;
  sys.lagrangian.eval = [lag, h](const Point& q0, const Point& q1) {
    const auto [q, v] = midpoint_inverse(q0, q1, h);
    return h * lag(q, v);
  };
  if (cs.dL_dq && cs.dL_dv) {
    // Chain rule through the midpoint chart: d/dq0 = (h/2) L_q - L_v and
    // d/dq1 = (h/2) L_q + L_v, both evaluated at the midpoint pair.
    const auto lq = cs.dL_dq;
    const auto lv = cs.dL_dv;
    sys.lagrangian.d1 = [lq, lv, h](const Point& q0, const Point& q1) {
      const auto [q, v] = midpoint_inverse(q0, q1, h);
      return Covector{axpy(0.5 * h, lq(q, v), scale(-1.0, lv(q, v))), q0};
    };
    sys.lagrangian.d2 = [lq, lv, h](const Point& q0, const Point& q1) {
      const auto [q, v] = midpoint_inverse(q0, q1, h);
      return Covector{axpy(0.5 * h, lq(q, v), lv(q, v)), q1};
    };
  }

  const auto force = cs.force;
  auto half_leg = [force, h](const Point& q0, const Point& q1, const Point& at) {
    const auto [q, v] = midpoint_inverse(q0, q1, h);
    Covector p = force(q, v);
    return Covector{scale(0.5 * h, p.components), at};
  };
  sys.force.minus = [half_leg](const Point& q0, const Point& q1) {
    return half_leg(q0, q1, q0);
  };
  sys.force.plus = [half_leg](const Point& q0, const Point& q1) {
    return half_leg(q0, q1, q1);
  };
  return sys;
}

} // namespace fdms

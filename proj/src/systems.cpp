#include "fdms/systems.hpp"

#include <cmath>

namespace fdms {

namespace {

double take_param(ParamMap& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

void reject_leftovers(const ParamMap& params, const std::string& name) {
  if (!params.empty())
    throw Error("unknown parameter '" + params.begin()->first + "' for system '" +
                name + "'");
}

void require_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error("step size must be positive");
}

GroupAction translation_action(std::size_t dim, std::size_t group_dim,
                               std::size_t offset) {
  // G = R^m acting by translation on coordinates [offset, offset+m).
  GroupAction a;
  a.dim = dim;
  a.group_dim = group_dim;
  a.act = [dim, group_dim, offset](const GroupElem& g, const Point& q) {
    require_dim(g, group_dim, "translation group element");
    require_dim(q, dim, "translation action point");
    Point out = q;
    for (std::size_t i = 0; i < group_dim; ++i) out[offset + i] += g[i];
    return out;
  };
  a.generator = [dim, group_dim, offset](const AlgebraElem& xi, const Point& q) {
    require_dim(xi, group_dim, "translation algebra element");
    require_dim(q, dim, "translation action point");
    Tangent v = zeros(dim);
    for (std::size_t i = 0; i < group_dim; ++i) v[offset + i] = xi[i];
    return v;
  };
  a.tangent = [](const GroupElem&, const Point&, const Tangent& dq) { return dq; };
  return a;
}

SymmetrySetup polar_setup() {
  // Chart (r, eta) with G = R translating eta; the kinetic metric is block
  // diagonal here, so the coordinate connection below is also the mechanical
  // one.
  SymmetrySetup s;
  s.dim = 2;
  s.group_dim = 1;
  s.action = translation_action(2, 1, 1);
  s.principal.form = [](const Point& q, const Tangent& dq) {
    require_dim(dq, q.size(), "connection form argument");
    return Vec{dq[1]};
  };
  s.principal.horizontal_lift = [](const Point&, const Vec& u) {
    return Tangent{u.at(0), 0.0};
  };
  s.discrete.hol = [](const Point& q0, const Point& q1) {
    return GroupElem{q1.at(1) - q0.at(1)};
  };
  s.discrete.level = [](const Point&) { return GroupElem{0.0}; };
  s.discrete.d1 = [](const Point&, const Point&, const Tangent& dq0) {
    return Vec{-dq0.at(1)};
  };
  s.discrete.d2 = [](const Point&, const Point&, const Tangent& dq1) {
    return Vec{dq1.at(1)};
  };
  s.quotient.project = [](const Point& q) { return ShapePoint{q.at(0)}; };
  s.quotient.section = [](const ShapePoint& tau) { return Point{tau.at(0), 0.0}; };
  s.quotient.tangent_project = [](const Point&, const Tangent& dq) {
    return Vec{dq.at(0)};
  };
  s.tangent_f1 = [](const Point&, const GroupElem&, const ShapePoint&,
                    const Tangent& dq0, const Vec& dw0, const Vec& dtau1) {
    return Tangent{dtau1.at(0), dq0.at(1) + dw0.at(0)};
  };
  s.chart_domain = Box{{0.7, -2.0}, {1.5, 2.0}};
  s.group_domain = unit_box(1);
  return s;
}

SymmetrySetup disk_setup() {
  // One angle coordinate, fully swept by the group: the shape space is a
  // point and the transport element carries the whole step.
  SymmetrySetup s;
  s.dim = 1;
  s.group_dim = 1;
  s.action = translation_action(1, 1, 0);
  s.principal.form = [](const Point&, const Tangent& dq) { return Vec{dq.at(0)}; };
  s.principal.horizontal_lift = [](const Point&, const Vec& u) {
    require_dim(u, 0, "horizontal lift shape tangent");
    return Tangent{0.0};
  };
  s.discrete.hol = [](const Point& q0, const Point& q1) {
    return GroupElem{q1.at(0) - q0.at(0)};
  };
  s.discrete.level = [](const Point&) { return GroupElem{0.0}; };
  s.discrete.d1 = [](const Point&, const Point&, const Tangent& dq0) {
    return Vec{-dq0.at(0)};
  };
  s.discrete.d2 = [](const Point&, const Point&, const Tangent& dq1) {
    return Vec{dq1.at(0)};
  };
  s.quotient.project = [](const Point&) { return ShapePoint{}; };
  s.quotient.section = [](const ShapePoint& tau) {
    require_dim(tau, 0, "disk shape point");
    return Point{0.0};
  };
  s.quotient.tangent_project = [](const Point&, const Tangent&) { return Vec{}; };
  s.tangent_f1 = [](const Point&, const GroupElem&, const ShapePoint&,
                    const Tangent& dq0, const Vec& dw0, const Vec&) {
    return Tangent{dq0.at(0) + dw0.at(0)};
  };
  s.chart_domain = Box{{-3.0}, {3.0}};
  s.group_domain = unit_box(1);
  return s;
}

ContinuousForcedSystem cart_continuous(double k) {
  // Planar double-well oscillator: L = |v|^2/2 - rho (rho - 1)^2 with
  // rho = |q|^2, damped by f = -k v.
  ContinuousForcedSystem cs;
  cs.dim = 2;
  cs.label = "rayleigh-cart";
  cs.lagrangian = [](const Point& q, const Vec& v) {
    const double rho = q[0] * q[0] + q[1] * q[1];
    return 0.5 * (v[0] * v[0] + v[1] * v[1]) - rho * (rho - 1.0) * (rho - 1.0);
  };
  cs.dL_dq = [](const Point& q, const Vec&) {
    const double rho = q[0] * q[0] + q[1] * q[1];
    const double dv = (rho - 1.0) * (3.0 * rho - 1.0); // d/drho of rho(rho-1)^2
    return Vec{-2.0 * q[0] * dv, -2.0 * q[1] * dv};
  };
  cs.dL_dv = [](const Point&, const Vec& v) { return v; };
  cs.force = [k](const Point& q, const Vec& v) {
    return Covector{{-k * v[0], -k * v[1]}, q};
  };
  return cs;
}

ContinuousForcedSystem polar_continuous() {
  // The same oscillator in the covering chart (r, eta):
  // L = (rdot^2 + r^2 etadot^2)/2 - r^2 (r^2 - 1)^2, no continuous force; the
  // damping enters through hand-built discrete legs below.
  ContinuousForcedSystem cs;
  cs.dim = 2;
  cs.label = "rayleigh-polar";
  cs.lagrangian = [](const Point& q, const Vec& v) {
    const double r = q[0], r2 = r * r;
    return 0.5 * (v[0] * v[0] + r2 * v[1] * v[1]) -
           r2 * (r2 - 1.0) * (r2 - 1.0);
  };
  cs.dL_dq = [](const Point& q, const Vec& v) {
    const double r = q[0], r2 = r * r;
    const double dpot = 2.0 * r * (r2 - 1.0) * (3.0 * r2 - 1.0);
    return Vec{r * v[1] * v[1] - dpot, 0.0};
  };
  cs.dL_dv = [](const Point& q, const Vec& v) {
    return Vec{v[0], q[0] * q[0] * v[1]};
  };
  cs.force = [](const Point& q, const Vec&) { return Covector{{0.0, 0.0}, q}; };
  return cs;
}

DiscreteForce polar_force(double k, double h) {
  // Dissipation legs of the covering chart, gradients of the chart's
  // quadratic dissipation function in each slot.
  auto legs = [k, h](const Point& q0, const Point& q1) {
    const double rb = 0.5 * (q0[0] + q1[0]);
    const double dr = q1[0] - q0[0];
    const double de = q1[1] - q0[1];
    const double h2 = h * h;
    Vec minus{0.5 * k * (-2.0 * dr + rb * de * de) / h2, -k * rb * rb * de / h2};
    Vec plus{-0.5 * k * (2.0 * dr + rb * de * de) / h2, -k * rb * rb * de / h2};
    return std::pair<Vec, Vec>{std::move(minus), std::move(plus)};
  };
  DiscreteForce f;
  f.minus = [legs](const Point& q0, const Point& q1) {
    return Covector{legs(q0, q1).first, q0};
  };
  f.plus = [legs](const Point& q0, const Point& q1) {
    return Covector{legs(q0, q1).second, q1};
  };
  return f;
}

ForcedDiscreteSystem disk_system(double m, double r, double eta, double g, double h) {
  // Uniform disk rolling with a constant friction torque: quadratic rotational
  // kinetic term and equal constant force legs.
  ForcedDiscreteSystem sys;
  sys.dim = 1;
  sys.label = "disk";
  const double c = 0.25 * m * r * r / h; // L_d = c (phi1 - phi0)^2
  sys.lagrangian.eval = [c](const Point& q0, const Point& q1) {
    const double d = q1[0] - q0[0];
    return c * d * d;
  };
  sys.lagrangian.d1 = [c](const Point& q0, const Point& q1) {
    return Covector{{-2.0 * c * (q1[0] - q0[0])}, q0};
  };
  sys.lagrangian.d2 = [c](const Point& q0, const Point& q1) {
    return Covector{{2.0 * c * (q1[0] - q0[0])}, q1};
  };
  const double torque = -eta * m * g * r / h;
  sys.force.minus = [torque](const Point& q0, const Point&) {
    return Covector{{torque}, q0};
  };
  sys.force.plus = [torque](const Point&, const Point& q1) {
    return Covector{{torque}, q1};
  };
  return sys;
}

GroupAction rotation_action() {
  GroupAction a;
  a.dim = 2;
  a.group_dim = 1;
  a.act = [](const GroupElem& g, const Point& q) {
    const double c = std::cos(g.at(0)), s = std::sin(g.at(0));
    return Point{c * q.at(0) - s * q.at(1), s * q.at(0) + c * q.at(1)};
  };
  a.generator = [](const AlgebraElem& xi, const Point& q) {
    return Tangent{-xi.at(0) * q.at(1), xi.at(0) * q.at(0)};
  };
  a.tangent = [](const GroupElem& g, const Point&, const Tangent& dq) {
    const double c = std::cos(g.at(0)), s = std::sin(g.at(0));
    return Tangent{c * dq.at(0) - s * dq.at(1), s * dq.at(0) + c * dq.at(1)};
  };
  return a;
}

} // namespace

std::vector<std::string> builtin_names() {
  return {"rayleigh-cart", "rayleigh-polar", "disk"};
}

BuiltinSystem make_builtin(const std::string& name, const ParamMap& params, double h) {
  require_step(h);
  ParamMap rest = params;
  BuiltinSystem b;
  b.name = name;
  b.h = h;

  if (name == "rayleigh-cart") {
    const double k = take_param(rest, "k", 0.5);
    reject_leftovers(rest, name);
    b.system = discretize_midpoint(cart_continuous(k), h);
    b.momentum_action = rotation_action();
    b.default_xi = {1.0};
    b.probe_box = unit_box(2, 1.5);
    b.params = {{"k", k}};
    return b;
  }
  if (name == "rayleigh-polar") {
    const double k = take_param(rest, "k", 0.5);
    reject_leftovers(rest, name);
    b.system = discretize_midpoint(polar_continuous(), h);
    b.system.label = "rayleigh-polar";
    b.system.force = polar_force(k, h);
    b.setup = polar_setup();
    b.momentum_action = b.setup->action;
    b.default_xi = {1.0};
    b.probe_box = b.setup->chart_domain;
    b.params = {{"k", k}};
    return b;
  }
  if (name == "disk") {
    const double m = take_param(rest, "m", 1.0);
    const double r = take_param(rest, "r", 1.0);
    const double eta = take_param(rest, "eta", 0.1);
    const double g = take_param(rest, "g", 9.8);
    reject_leftovers(rest, name);
    b.system = disk_system(m, r, eta, g, h);
    b.setup = disk_setup();
    b.momentum_action = b.setup->action;
    b.default_xi = {1.0};
    b.probe_box = b.setup->chart_domain;
    b.params = {{"m", m}, {"r", r}, {"eta", eta}, {"g", g}};
    return b;
  }
  throw Error("unknown system '" + name + "'");
}

} // namespace fdms

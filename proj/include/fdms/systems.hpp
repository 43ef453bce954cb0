#pragma once

#include "fdms/symmetry.hpp"

#include <map>
#include <optional>

namespace fdms {

using ParamMap = std::map<std::string, double>;

// A registered example system: the discrete data, the symmetry setup when the
// chart carries one, the group action used for momentum bookkeeping, and a
// probe box for audits and property tests.
struct BuiltinSystem {
  std::string name;
  ForcedDiscreteSystem system;
  std::optional<SymmetrySetup> setup;
  GroupAction momentum_action;
  AlgebraElem default_xi;
  Box probe_box;
  double h = 0.0;
  ParamMap params; // resolved values, defaults filled in
};

// Registered names: "rayleigh-cart" (planar double-well oscillator with linear
// velocity damping, param k), "rayleigh-polar" (its polar covering chart with
// the angle-translation symmetry, param k), "disk" (rolling disk with constant
// friction torque, params m, r, eta, g; the angle chart is a full group orbit).
std::vector<std::string> builtin_names();

BuiltinSystem make_builtin(const std::string& name, const ParamMap& params, double h);

} // namespace fdms

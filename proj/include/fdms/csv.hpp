#pragma once

#include "fdms/momentum.hpp"
#include "fdms/reduction.hpp"

#include <string>

namespace fdms {

// Numbers are printed in shortest round-trip form and parsed back exactly;
// both directions are locale independent.
std::string format_double(double x);
double parse_double(const std::string& tok);

// Full curve files: header k,q_0,...,q_{n-1}, one row per point.
void write_curve_csv(const std::string& path, const DiscreteCurve& curve);
DiscreteCurve read_curve_csv(const std::string& path);

// Reduced curve files: header k,tau0_*,w_*,tau1_*; row k holds the window
// (tau_k, w_k, tau_{k+1}), and the overlapping shape columns of consecutive
// rows must agree.
void write_reduced_csv(const std::string& path, const ReducedCurve& rc,
                       std::size_t shape_dim, std::size_t group_dim);
ReducedCurve read_reduced_csv(const std::string& path, std::size_t shape_dim,
                              std::size_t group_dim);

// Momentum files: header k,j_plus,j_minus,noether_residual, one row per pair.
void write_momentum_csv(const std::string& path, const MomentumReport& rep);

} // namespace fdms

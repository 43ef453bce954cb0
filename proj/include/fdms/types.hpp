#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdms {

// Chart coordinates, tangent vectors, covector components, Lie algebra /
// abelian group elements are all plain coordinate arrays.  The group G is a
// vector group R^m: composition is +, identity is 0, exp is the identity map.
using Vec = std::vector<double>;
using Point = Vec;       // configuration chart point, length n
using Tangent = Vec;     // tangent components at some base point, length n
using GroupElem = Vec;   // element of G = R^m
using AlgebraElem = Vec; // element of g = R^m
using ShapePoint = Vec;  // chart point on the shape space Q/G, length n-m

// Covector with its base point tracked; pairing checks both lengths.
struct Covector {
  Vec components;
  Point base;
};

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Newton loop exhausted max_iters without meeting the residual tolerance.
struct NonConvergence : Error {
  NonConvergence(int iterations_, double residual_norm_, long step_index_ = -1);
  int iterations;
  double residual_norm;
  long step_index; // trajectory step that failed, -1 when not in a trajectory
};

// Finite-difference Jacobian was numerically singular.
struct SingularJacobian : Error {
  explicit SingularJacobian(double condition_estimate_);
  double condition_estimate;
};

// A quantity that must be finite evaluated to NaN/Inf; carries which term.
struct EvaluationError : Error {
  explicit EvaluationError(const std::string& term)
      : Error("non-finite value in " + term) {}
};

struct DimensionMismatch : Error {
  DimensionMismatch(const std::string& what, std::size_t expected, std::size_t got);
};

// Reconstruction seed disagrees with the stored initial shape point.
struct BasePointMismatch : Error {
  explicit BasePointMismatch(double deviation_);
  double deviation;
};

// No usable local section at the requested shape point.
struct NoSection : Error {
  explicit NoSection(const std::string& msg) : Error(msg) {}
};

bool all_finite(const Vec& v);
void require_finite(const Vec& v, const std::string& term);
void require_dim(const Vec& v, std::size_t n, const std::string& what);

// Natural pairing <p, v> at a common base point.
double pairing(const Covector& p, const Tangent& v);

// Small vector helpers used throughout; kept free-standing and allocation-light.
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(double s, const Vec& a);
Vec axpy(double s, const Vec& x, const Vec& y); // s*x + y
double dot(const Vec& a, const Vec& b);
double norm_inf(const Vec& v);
Vec zeros(std::size_t n);
Vec basis(std::size_t n, std::size_t i);
Vec concat(const Vec& a, const Vec& b);

} // namespace fdms

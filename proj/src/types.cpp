#include "fdms/types.hpp"

#include <cmath>
#include <sstream>

namespace fdms {

namespace {
std::string fmt_non_convergence(int iters, double rnorm, long step) {
  std::ostringstream os;
  os << "Newton did not converge after " << iters
     << " iterations (residual inf-norm " << rnorm << ")";
  if (step >= 0) os << " at step index " << step;
  return os.str();
}
} // namespace

NonConvergence::NonConvergence(int iterations_, double residual_norm_, long step_index_)
    : Error(fmt_non_convergence(iterations_, residual_norm_, step_index_)),
      iterations(iterations_), residual_norm(residual_norm_), step_index(step_index_) {}

SingularJacobian::SingularJacobian(double condition_estimate_)
    : Error("Jacobian numerically singular (condition estimate " +
            std::to_string(condition_estimate_) + ")"),
      condition_estimate(condition_estimate_) {}

DimensionMismatch::DimensionMismatch(const std::string& what, std::size_t expected,
                                     std::size_t got)
    : Error(what + ": expected length " + std::to_string(expected) + ", got " +
            std::to_string(got)) {}

BasePointMismatch::BasePointMismatch(double deviation_)
    : Error("initial point does not project to the stored base shape point "
            "(deviation " + std::to_string(deviation_) + ")"),
      deviation(deviation_) {}

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void require_finite(const Vec& v, const std::string& term) {
  if (!all_finite(v)) throw EvaluationError(term);
}

void require_dim(const Vec& v, std::size_t n, const std::string& what) {
  if (v.size() != n) throw DimensionMismatch(what, n, v.size());
}

double pairing(const Covector& p, const Tangent& v) {
  require_dim(v, p.components.size(), "pairing argument");
  require_dim(p.base, p.components.size(), "covector base point");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += p.components[i] * v[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  require_dim(b, a.size(), "vector sum operand");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  require_dim(b, a.size(), "vector difference operand");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(double s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Vec axpy(double s, const Vec& x, const Vec& y) {
  require_dim(y, x.size(), "axpy operand");
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = s * x[i] + y[i];
  return r;
}

double dot(const Vec& a, const Vec& b) {
  require_dim(b, a.size(), "dot operand");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_inf(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Vec zeros(std::size_t n) { return Vec(n, 0.0); }

Vec basis(std::size_t n, std::size_t i) {
  Vec e(n, 0.0);
  e.at(i) = 1.0;
  return e;
}

Vec concat(const Vec& a, const Vec& b) {
  Vec r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

} // namespace fdms

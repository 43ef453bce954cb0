#include "fdms/linalg.hpp"

#include <cmath>
#include <limits>

namespace fdms {

Vec solve_dense(Matrix a, Vec b) {
  const std::size_t n = a.rows;
  if (a.cols != n) throw DimensionMismatch("solve_dense matrix", n, a.cols);
  require_dim(b, n, "solve_dense rhs");

  double max_piv = 0.0;
  double min_piv = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    const double piv = a(k, k);
    const double apiv = std::abs(piv);
    max_piv = std::max(max_piv, apiv);
    min_piv = std::min(min_piv, apiv);
    if (apiv < 1e-14 * std::max(1.0, max_piv))
      throw SingularJacobian(min_piv > 0.0 ? max_piv / min_piv
                                           : std::numeric_limits<double>::infinity());
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / piv;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vec x(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  require_finite(x, "linear solve result");
  return x;
}

} // namespace fdms

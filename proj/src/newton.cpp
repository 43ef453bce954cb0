#include "fdms/newton.hpp"

#include "fdms/linalg.hpp"

#include <cmath>

namespace fdms {

Vec newton_solve(const std::function<Vec(const Vec&)>& residual, Vec x,
                 const StepConfig& cfg,
                 const std::function<double(const Vec&)>& scale_at) {
  const std::size_t n = x.size();
  double rnorm = 0.0;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    Vec r = residual(x);
    require_dim(r, n, "Newton residual");
    rnorm = norm_inf(r);
    if (!std::isfinite(rnorm)) throw EvaluationError("Newton residual norm");
    // The acceptance scale follows the iterate, not the starting guess, so a
    // far-off guess cannot loosen the certificate the caller re-checks later.
    const double tol =
        cfg.newton_tol * (scale_at ? std::max(1.0, scale_at(x)) : 1.0);
    if (rnorm <= tol) return x;

    Matrix jac(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const double step = cfg.jacobian_fd_step * std::max(1.0, std::abs(x[j]));
      Vec xs = x;
      xs[j] += step;
      const Vec rs = residual(xs);
      require_dim(rs, n, "Newton residual");
      for (std::size_t i = 0; i < n; ++i) jac(i, j) = (rs[i] - r[i]) / step;
    }
    const Vec delta = solve_dense(jac, scale(-1.0, r));
    x = add(x, delta);
    require_finite(x, "Newton iterate");
  }
  throw NonConvergence(cfg.max_iters, rnorm);
}

} // namespace fdms

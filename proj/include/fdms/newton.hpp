#pragma once

#include "fdms/del.hpp"

#include <functional>

namespace fdms {

// Newton iteration shared by the full-space and reduced steppers: solve
// residual(x) = 0 with a forward-difference Jacobian (step scaled by |x_j|).
// When scale_at is given, convergence is judged against
// newton_tol * max(1, scale_at(x)) at the current iterate, matching the
// post-hoc certificates.  Throws NonConvergence / SingularJacobian.
Vec newton_solve(const std::function<Vec(const Vec&)>& residual, Vec x0,
                 const StepConfig& cfg,
                 const std::function<double(const Vec&)>& scale_at = nullptr);

} // namespace fdms

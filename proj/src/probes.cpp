#include "fdms/probes.hpp"

namespace fdms {

Box unit_box(std::size_t n, double half_width) {
  return Box{Vec(n, -half_width), Vec(n, half_width)};
}

Point sample_box(const Box& box, Rng& rng) {
  require_dim(box.hi, box.lo.size(), "sampling box upper corner");
  Point q(box.dim());
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::uniform_real_distribution<double> u(box.lo[i], box.hi[i]);
    q[i] = u(rng);
  }
  return q;
}

Vec sample_symmetric(std::size_t n, double scale, Rng& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vec v(n);
  for (double& x : v) x = u(rng);
  return v;
}

} // namespace fdms

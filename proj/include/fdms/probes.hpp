#pragma once

#include "fdms/types.hpp"

#include <cstdint>
#include <random>

namespace fdms {

using Rng = std::mt19937_64;

// Axis-aligned sampling box for probe points; audits and property tests draw
// from these so the checks stay inside the charts' validity regions.
struct Box {
  Vec lo, hi;

  std::size_t dim() const { return lo.size(); }
};

Box unit_box(std::size_t n, double half_width = 1.0);

Point sample_box(const Box& box, Rng& rng);

// Components uniform in [-scale, scale]; used for tangent and algebra probes.
Vec sample_symmetric(std::size_t n, double scale, Rng& rng);

} // namespace fdms

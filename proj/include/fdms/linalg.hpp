#pragma once

#include "fdms/types.hpp"

namespace fdms {

// Dense column-major matrix just big enough for the small Newton systems here.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  Vec data; // column major, data[i + j*rows]

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i + j * rows]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i + j * rows]; }
};

// Solve A x = b by Gaussian elimination with partial pivoting.
// Throws SingularJacobian when a pivot collapses; the condition estimate is the
// crude ratio max|pivot| / min|pivot|.
Vec solve_dense(Matrix a, Vec b);

} // namespace fdms

#pragma once

#include <cmath>
#include <random>

#include "salaser/fock_ops.hpp"

namespace salaser::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

/// Hermitian with unit trace (not necessarily positive).
inline ComplexMatrix random_hermitian_unit_trace(std::mt19937_64& rng, int dim) {
  ComplexMatrix m = random_matrix(rng, dim, dim);
  m = 0.5 * (m + m.adjoint()).eval();
  m.diagonal().array() += (1.0 - m.trace().real()) / dim;
  return m;
}

/// G G† / Tr(G G†): a valid density matrix.
inline ComplexMatrix random_density(std::mt19937_64& rng, int dim) {
  const ComplexMatrix g = random_matrix(rng, dim, dim);
  ComplexMatrix m = g * g.adjoint();
  return m / m.trace().real();
}

/// Rank by Gaussian elimination with partial pivoting on a copy.
inline int brute_force_rank(ComplexMatrix m, double tol = 1e-10) {
  int rank = 0;
  for (Eigen::Index col = 0; col < m.cols() && rank < m.rows(); ++col) {
    Eigen::Index pivot = rank;
    for (Eigen::Index r = rank; r < m.rows(); ++r) {
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    }
    if (std::abs(m(pivot, col)) < tol) continue;
    m.row(pivot).swap(m.row(rank));
    for (Eigen::Index r = rank + 1; r < m.rows(); ++r) {
      const Complex f = m(r, col) / m(rank, col);
      m.row(r) -= f * m.row(rank);
    }
    ++rank;
  }
  return rank;
}

}  // namespace salaser::testing

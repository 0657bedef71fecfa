#include "salaser/fock_ops.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "salaser/errors.hpp"

namespace salaser {

SpaceConfig::SpaceConfig(int n_max_) : n_max(n_max_) {
  if (n_max < 1) {
    throw DomainError("n_max must be >= 1, got " + std::to_string(n_max));
  }
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix annihilation(int n_max) {
  if (n_max < 1) {
    throw DomainError("annihilation: n_max must be >= 1 (field space of dimension 1 is degenerate)");
  }
  ComplexMatrix a = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

ComplexMatrix number_operator(int n_max) {
  ComplexMatrix a = annihilation(n_max);
  return a.adjoint() * a;
}

ComplexMatrix atom_lowering() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(kLowerLevel, kUpperLevel) = 1.0;
  return s;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  ComplexMatrix out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double abs_tol) {
  return max_abs_diff(a, b) <= abs_tol;
}

CompositeOperators composite_operators(const SpaceConfig& space) {
  const ComplexMatrix id_atom = identity(2);
  const ComplexMatrix id_field = identity(space.field_dim());
  ComplexMatrix inv = ComplexMatrix::Zero(2, 2);
  inv(kUpperLevel, kUpperLevel) = 1.0;
  inv(kLowerLevel, kLowerLevel) = -1.0;
  return CompositeOperators{
      .a = tensor(id_atom, annihilation(space.n_max)),
      .sigma = tensor(atom_lowering(), id_field),
      .n = tensor(id_atom, number_operator(space.n_max)),
      .inversion = tensor(inv, id_field),
  };
}

}  // namespace salaser

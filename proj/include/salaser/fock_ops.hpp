#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace salaser {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Truncated atom ⊗ Fock space.
///
/// Composite index = atom * (n_max + 1) + photon, with atom 0 the lower level
/// |1> and atom 1 the upper level |2>. The atom is the slow index, so the two
/// atomic blocks of any operator are contiguous.
struct SpaceConfig {
  int n_max = 20;

  /// Throws DomainError unless n_max >= 1.
  explicit SpaceConfig(int n_max_ = 20);

  int field_dim() const { return n_max + 1; }
  int dim() const { return 2 * (n_max + 1); }
  int index(int atom, int photon) const { return atom * field_dim() + photon; }
  int atom_of(int index) const { return index / field_dim(); }
  int photon_of(int index) const { return index % field_dim(); }
  /// Total excitation number (photons plus atomic excitation) of a basis state.
  int excitation(int index) const { return atom_of(index) + photon_of(index); }

  friend bool operator==(const SpaceConfig&, const SpaceConfig&) = default;
};

inline constexpr int kLowerLevel = 0;
inline constexpr int kUpperLevel = 1;

ComplexMatrix identity(int dim);

/// Field annihilation operator on {|0>, ..., |n_max>}: a|n> = sqrt(n)|n-1>.
ComplexMatrix annihilation(int n_max);

/// a† a.
ComplexMatrix number_operator(int n_max);

/// sigma = |1><2| in the (lower, upper) basis.
ComplexMatrix atom_lowering();

/// Kronecker product, left factor is the slow index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Max-norm of the entrywise difference, or +inf on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double abs_tol);

/// Operators lifted to the composite space described by `space`.
struct CompositeOperators {
  ComplexMatrix a;      // I_2 ⊗ a
  ComplexMatrix sigma;  // sigma ⊗ I_field
  ComplexMatrix n;      // I_2 ⊗ a†a
  ComplexMatrix inversion;  // (|2><2| - |1><1|) ⊗ I_field
};

CompositeOperators composite_operators(const SpaceConfig& space);

}  // namespace salaser

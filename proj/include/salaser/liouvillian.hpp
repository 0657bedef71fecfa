#pragma once

#include <optional>

#include "salaser/fock_ops.hpp"

namespace salaser {

/// Dimensionless rates of the single-atom laser, all in units of 2g:
/// pump omega = Gamma/2g, spontaneous emission eta = gamma/2g,
/// cavity decay tau = kappa/2g.
struct ModelParams {
  double omega = 0.0;
  double eta = 0.0;
  double tau = 0.0;

  /// Validated constructor; throws DomainError on negative or non-finite rates.
  static ModelParams make(double omega, double eta, double tau);

  /// From the dimensional rates (g, kappa, gamma, Gamma). Requires g > 0.
  static ModelParams from_dimensional(double g, double kappa, double gamma, double pump);

  /// The regime omega = tau, eta = 0.
  static ModelParams balanced(double tau) { return make(tau, 0.0, tau); }

  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct StateCheck {
  double hermiticity_error = 0.0;  // max |rho - rho†|
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;

  bool ok() const;
};

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityFloor = -1e-8;

/// Density operator on a truncated atom ⊗ Fock space. Construction only checks
/// the shape; `check()` / `validate()` test the physical invariants.
class DensityMatrix {
 public:
  DensityMatrix(SpaceConfig space, ComplexMatrix matrix);

  /// |atom, photon><atom, photon|.
  static DensityMatrix basis_state(const SpaceConfig& space, int atom, int photon);

  const SpaceConfig& space() const { return space_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex trace() const { return matrix_.trace(); }

  StateCheck check() const;
  /// Throws InvalidState if `check()` fails.
  void validate() const;

 private:
  SpaceConfig space_;
  ComplexMatrix matrix_;
};

/// Right-hand side of the master equation in dimensionless time s = 2g t:
///
///   d rho/ds = 1/2 [a†σ - σ†a, rho] + tau/2 D[a] rho + eta/2 D[σ] rho + omega/2 D[σ†] rho,
///
/// with D[c] rho = 2 c rho c† - c†c rho - rho c†c. Operators are built once per
/// (params, space) pair.
class MasterEquation {
 public:
  MasterEquation(const ModelParams& params, const SpaceConfig& space);

  const ModelParams& params() const { return params_; }
  const SpaceConfig& space() const { return space_; }

  /// Throws DimensionMismatch if rho is not D×D.
  ComplexMatrix rhs(const ComplexMatrix& rho) const;

  /// Matrix element <k| L(|i><j|) |l> of the superoperator.
  Complex element(int k, int l, int i, int j) const;

 private:
  struct Channel {
    double rate;
    ComplexMatrix op;
    ComplexMatrix op_dag;
    ComplexMatrix gain;  // op† op
  };

  ModelParams params_;
  SpaceConfig space_;
  ComplexMatrix coupling_;  // a†σ - σ†a
  Channel channels_[3];
};

ComplexMatrix apply_rhs(const DensityMatrix& rho, const ModelParams& params);

/// Column-stacking vectorization: vec(X)[j*D + i] = X(i, j).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, int dim);

/// Dense D²×D² superoperator with vec(L(rho)) = L * vec(rho) under `vec`.
ComplexMatrix build_superoperator(const ModelParams& params, const SpaceConfig& space);

enum class SteadyStateMethod {
  /// Solve only the block of L that couples equal-excitation ket/bra pairs.
  /// The stationary state lives entirely in that block.
  kExcitationBlock,
  /// Solve the full D²×D² system. Only practical for small n_max.
  kFullSuperoperator,
};

struct SteadyStateOptions {
  double tol = 1e-9;
  double tail_threshold = 1e-10;
  bool adaptive = true;
  int max_n_max = 80;
  /// Basis index i whose population equation (the row of rho_ii) is replaced
  /// by the trace constraint. Default: the one with the smallest max-norm.
  std::optional<int> replaced_diagonal;
  double row_independence_tol = 1e-8;
  SteadyStateMethod method = SteadyStateMethod::kExcitationBlock;
};

struct SteadyStateResult {
  DensityMatrix rho;
  double residual_norm = 0.0;  // max |L(rho)|
  double tail_mass = 0.0;      // probability at photon numbers >= n_max - 2
  int replaced_diagonal = 0;
  double row_independence_gap = 0.0;
};

SteadyStateResult steady_state(const ModelParams& params, const SpaceConfig& space,
                               const SteadyStateOptions& options);
SteadyStateResult steady_state(const ModelParams& params, const SpaceConfig& space, double tol);

/// Probability mass at photon numbers >= n_max - 2.
double tail_mass(const DensityMatrix& rho);

/// Largest step accepted by `evolve`: 0.1 / max(1, omega, eta, tau * n_max).
double max_stable_step(const ModelParams& params, const SpaceConfig& space);

inline constexpr double kTraceDriftTol = 1e-8;

/// Classical RK4 on the master equation. The step is shrunk so that an integer
/// number of steps covers `duration` exactly.
DensityMatrix evolve(const DensityMatrix& rho0, const ModelParams& params, double duration,
                     double dt);

}  // namespace salaser

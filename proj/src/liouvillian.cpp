#include "salaser/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "salaser/errors.hpp"

namespace salaser {

namespace {

void require_rate(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    std::ostringstream os;
    os << "rate " << name << " must be finite and non-negative, got " << value;
    throw DomainError(os.str());
  }
}

}  // namespace

ModelParams ModelParams::make(double omega, double eta, double tau) {
  ModelParams p{omega, eta, tau};
  p.validate();
  return p;
}

ModelParams ModelParams::from_dimensional(double g, double kappa, double gamma, double pump) {
  if (!std::isfinite(g) || g <= 0.0) {
    throw DomainError("coupling g must be finite and positive");
  }
  require_rate(kappa, "kappa");
  require_rate(gamma, "gamma");
  require_rate(pump, "pump");
  return make(pump / (2.0 * g), gamma / (2.0 * g), kappa / (2.0 * g));
}

void ModelParams::validate() const {
  require_rate(omega, "omega");
  require_rate(eta, "eta");
  require_rate(tau, "tau");
}

bool StateCheck::ok() const {
  return hermiticity_error <= kHermiticityTol && trace_error <= kTraceTol &&
         min_eigenvalue >= kPositivityFloor;
}

DensityMatrix::DensityMatrix(SpaceConfig space, ComplexMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
    std::ostringstream os;
    os << "density matrix is " << matrix_.rows() << "x" << matrix_.cols() << ", space needs "
       << space_.dim() << "x" << space_.dim();
    throw DimensionMismatch(os.str());
  }
}

DensityMatrix DensityMatrix::basis_state(const SpaceConfig& space, int atom, int photon) {
  if (atom < 0 || atom > 1 || photon < 0 || photon > space.n_max) {
    throw DomainError("basis state outside the truncated space");
  }
  ComplexMatrix m = ComplexMatrix::Zero(space.dim(), space.dim());
  const int i = space.index(atom, photon);
  m(i, i) = 1.0;
  return DensityMatrix(space, std::move(m));
}

StateCheck DensityMatrix::check() const {
  StateCheck c;
  c.hermiticity_error = max_abs_diff(matrix_, matrix_.adjoint());
  c.trace_error = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  const ComplexMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

void DensityMatrix::validate() const {
  const StateCheck c = check();
  if (!c.ok()) {
    std::ostringstream os;
    os << "invalid density matrix: hermiticity error " << c.hermiticity_error << ", trace error "
       << c.trace_error << ", min eigenvalue " << c.min_eigenvalue;
    throw InvalidState(os.str());
  }
}

MasterEquation::MasterEquation(const ModelParams& params, const SpaceConfig& space)
    : params_(params), space_(space) {
  params_.validate();
  const CompositeOperators ops = composite_operators(space_);
  const ComplexMatrix a_dag = ops.a.adjoint();
  const ComplexMatrix s_dag = ops.sigma.adjoint();
  coupling_ = a_dag * ops.sigma - s_dag * ops.a;

  auto channel = [](double rate, const ComplexMatrix& op) {
    return Channel{rate, op, op.adjoint(), op.adjoint() * op};
  };
  channels_[0] = channel(params_.tau, ops.a);
  channels_[1] = channel(params_.eta, ops.sigma);
  channels_[2] = channel(params_.omega, s_dag);
}

ComplexMatrix MasterEquation::rhs(const ComplexMatrix& rho) const {
  const int d = space_.dim();
  if (rho.rows() != d || rho.cols() != d) {
    std::ostringstream os;
    os << "rhs: state is " << rho.rows() << "x" << rho.cols() << ", operators are " << d << "x"
       << d;
    throw DimensionMismatch(os.str());
  }
  ComplexMatrix out = 0.5 * (coupling_ * rho - rho * coupling_);
  for (const Channel& c : channels_) {
    if (c.rate == 0.0) continue;
    out += c.rate * (c.op * rho * c.op_dag);
    out -= (0.5 * c.rate) * (c.gain * rho + rho * c.gain);
  }
  return out;
}

Complex MasterEquation::element(int k, int l, int i, int j) const {
  // L(|i><j|) = 1/2 (K|i><j| - |i><j|K) + sum_c r_c (c|i><j|c† - 1/2 G|i><j| - 1/2 |i><j|G)
  Complex v = 0.0;
  if (l == j) v += 0.5 * coupling_(k, i);
  if (k == i) v -= 0.5 * coupling_(j, l);
  for (const Channel& c : channels_) {
    if (c.rate == 0.0) continue;
    Complex t = c.op(k, i) * std::conj(c.op(l, j));
    if (l == j) t -= 0.5 * c.gain(k, i);
    if (k == i) t -= 0.5 * c.gain(j, l);
    v += c.rate * t;
  }
  return v;
}

ComplexMatrix apply_rhs(const DensityMatrix& rho, const ModelParams& params) {
  return MasterEquation(params, rho.space()).rhs(rho.matrix());
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionMismatch("unvec: vector length is not dim^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

ComplexMatrix build_superoperator(const ModelParams& params, const SpaceConfig& space) {
  params.validate();
  const int d = space.dim();
  const CompositeOperators ops = composite_operators(space);
  const ComplexMatrix id = identity(d);
  const ComplexMatrix k = ops.a.adjoint() * ops.sigma - ops.sigma.adjoint() * ops.a;

  // vec(A X B) = (B^T ⊗ A) vec(X)
  ComplexMatrix l = 0.5 * (tensor(id, k) - tensor(k.transpose(), id));
  const std::pair<double, ComplexMatrix> channels[] = {
      {params.tau, ops.a}, {params.eta, ops.sigma}, {params.omega, ops.sigma.adjoint()}};
  for (const auto& [rate, c] : channels) {
    if (rate == 0.0) continue;
    const ComplexMatrix gain = c.adjoint() * c;
    l += rate * (tensor(c.conjugate(), c) - 0.5 * tensor(id, gain) -
                 0.5 * tensor(gain.transpose(), id));
  }
  return l;
}

double tail_mass(const DensityMatrix& rho) {
  const SpaceConfig& s = rho.space();
  double mass = 0.0;
  for (int n = std::max(0, s.n_max - 2); n <= s.n_max; ++n) {
    for (int atom = 0; atom < 2; ++atom) {
      const int i = s.index(atom, n);
      mass += rho.matrix()(i, i).real();
    }
  }
  return mass;
}

namespace {

// A linear system for the stationary state: unknowns are the entries listed in
// `entries` (pairs (i, j) of rho), rows are the corresponding entries of L(rho).
struct StationarySystem {
  std::vector<std::pair<int, int>> entries;
  std::vector<int> diagonal_row;  // basis index i -> row of the rho_ii equation
  ComplexMatrix matrix;
};

StationarySystem excitation_block_system(const MasterEquation& eq) {
  const SpaceConfig& s = eq.space();
  const int d = s.dim();
  StationarySystem sys;
  sys.diagonal_row.assign(d, -1);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      if (s.excitation(i) != s.excitation(j)) continue;
      if (i == j) sys.diagonal_row[i] = static_cast<int>(sys.entries.size());
      sys.entries.emplace_back(i, j);
    }
  }
  const auto n = static_cast<Eigen::Index>(sys.entries.size());
  sys.matrix.resize(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const auto [i, j] = sys.entries[col];
    for (Eigen::Index row = 0; row < n; ++row) {
      const auto [k, l] = sys.entries[row];
      sys.matrix(row, col) = eq.element(k, l, i, j);
    }
  }
  return sys;
}

StationarySystem full_system(const ModelParams& params, const SpaceConfig& space) {
  const int d = space.dim();
  StationarySystem sys;
  sys.diagonal_row.resize(d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) sys.entries.emplace_back(i, j);
  }
  for (int i = 0; i < d; ++i) sys.diagonal_row[i] = i * d + i;
  sys.matrix = build_superoperator(params, space);
  return sys;
}

// Diagonal indices ordered by the max-norm of their row, smallest first.
std::vector<int> diagonal_rows_by_norm(const StationarySystem& sys) {
  std::vector<std::pair<double, int>> ranked;
  for (int i = 0; i < static_cast<int>(sys.diagonal_row.size()); ++i) {
    const double norm = sys.matrix.row(sys.diagonal_row[i]).cwiseAbs().maxCoeff();
    ranked.emplace_back(norm, i);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<int> order;
  for (const auto& r : ranked) order.push_back(r.second);
  return order;
}

ComplexMatrix solve_with_trace_row(const StationarySystem& sys, int diagonal, int dim) {
  ComplexMatrix m = sys.matrix;
  const int row = sys.diagonal_row[diagonal];
  m.row(row).setZero();
  for (int i = 0; i < dim; ++i) m(row, sys.diagonal_row[i]) = 1.0;
  ComplexVector rhs = ComplexVector::Zero(m.rows());
  rhs(row) = 1.0;

  Eigen::FullPivLU<ComplexMatrix> lu(m);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "steady state is not unique: constrained system has rank " << lu.rank() << " < "
       << m.rows();
    throw DegenerateSteadyState(os.str());
  }
  const ComplexVector x = lu.solve(rhs);
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const auto [i, j] = sys.entries[k];
    rho(i, j) = x(k);
  }
  return rho;
}

SteadyStateResult solve_once(const ModelParams& params, const SpaceConfig& space,
                             const SteadyStateOptions& options) {
  const MasterEquation eq(params, space);
  const StationarySystem sys = options.method == SteadyStateMethod::kFullSuperoperator
                                   ? full_system(params, space)
                                   : excitation_block_system(eq);
  const std::vector<int> order = diagonal_rows_by_norm(sys);
  int primary = order.front();
  if (options.replaced_diagonal) {
    primary = *options.replaced_diagonal;
    if (primary < 0 || primary >= space.dim()) {
      throw DomainError("replaced_diagonal outside the basis");
    }
  }
  const int secondary = order.front() == primary ? order[1] : order.front();

  ComplexMatrix rho = solve_with_trace_row(sys, primary, space.dim());
  const ComplexMatrix check = solve_with_trace_row(sys, secondary, space.dim());
  const double gap = max_abs_diff(rho, check);
  if (gap > options.row_independence_tol) {
    std::ostringstream os;
    os << "steady state depends on the replaced row (gap " << gap << ")";
    throw ConvergenceError(os.str());
  }

  DensityMatrix state(space, std::move(rho));
  const double residual = eq.rhs(state.matrix()).cwiseAbs().maxCoeff();
  if (residual > options.tol) {
    std::ostringstream os;
    os << "steady-state residual " << residual << " exceeds tolerance " << options.tol;
    throw ConvergenceError(os.str());
  }
  const StateCheck c = state.check();
  if (!c.ok()) {
    std::ostringstream os;
    os << "steady state fails validation: hermiticity error " << c.hermiticity_error
       << ", trace error " << c.trace_error << ", min eigenvalue " << c.min_eigenvalue;
    throw ConvergenceError(os.str());
  }
  const double tail = tail_mass(state);
  return SteadyStateResult{std::move(state), residual, tail, primary, gap};
}

}  // namespace

SteadyStateResult steady_state(const ModelParams& params, const SpaceConfig& space,
                               const SteadyStateOptions& options) {
  params.validate();
  if (params.omega == 0.0 && params.tau == 0.0) {
    throw DegenerateSteadyState(
        "steady state is not unique for omega = tau = 0; at least one must be positive");
  }
  SpaceConfig current = space;
  for (;;) {
    SteadyStateResult r = solve_once(params, current, options);
    if (r.tail_mass <= options.tail_threshold) return r;
    if (!options.adaptive || current.n_max >= options.max_n_max) {
      std::ostringstream os;
      os << "Fock truncation too small: tail mass " << r.tail_mass << " at n_max "
         << current.n_max << " exceeds " << options.tail_threshold
         << "; increase n_max";
      throw TruncationError(os.str());
    }
    current = SpaceConfig(std::min(2 * current.n_max, options.max_n_max));
  }
}

SteadyStateResult steady_state(const ModelParams& params, const SpaceConfig& space, double tol) {
  SteadyStateOptions options;
  options.tol = tol;
  return steady_state(params, space, options);
}

double max_stable_step(const ModelParams& params, const SpaceConfig& space) {
  const double scale =
      std::max({1.0, params.omega, params.eta, params.tau * static_cast<double>(space.n_max)});
  return 0.1 / scale;
}

DensityMatrix evolve(const DensityMatrix& rho0, const ModelParams& params, double duration,
                     double dt) {
  if (!(dt > 0.0)) throw StepSizeError("dt must be positive");
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw DomainError("duration must be finite and non-negative");
  }
  const double limit = max_stable_step(params, rho0.space());
  if (dt > limit) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the stability limit " << limit;
    throw StepSizeError(os.str());
  }
  if (duration == 0.0) return rho0;

  const MasterEquation eq(params, rho0.space());
  const auto steps = static_cast<long>(std::ceil(duration / dt - 1e-12));
  const double h = duration / static_cast<double>(steps);
  const Complex trace0 = rho0.matrix().trace();

  ComplexMatrix rho = rho0.matrix();
  for (long s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = eq.rhs(rho);
    const ComplexMatrix k2 = eq.rhs(rho + (0.5 * h) * k1);
    const ComplexMatrix k3 = eq.rhs(rho + (0.5 * h) * k2);
    const ComplexMatrix k4 = eq.rhs(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double drift = std::abs(rho.trace() - trace0);
    if (drift > kTraceDriftTol) {
      std::ostringstream os;
      os << "trace drift " << drift << " after step " << s << "; reduce dt";
      throw StepSizeError(os.str());
    }
  }
  return DensityMatrix(rho0.space(), std::move(rho));
}

}  // namespace salaser

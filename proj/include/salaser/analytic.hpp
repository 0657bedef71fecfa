#pragma once

#include "salaser/liouvillian.hpp"
#include "salaser/observables.hpp"

namespace salaser {

/// Coefficients of the stationary moment relation <n^2> + A <n> - B = 0.
struct QuadraticRelation {
  double a = 0.0;
  double b = 0.0;
};

/// Coefficients of the second-order ODE for the phase-averaged P function,
///   (a02 I^2 + a03 I^3) P'' + (a10 + a11 I + a12 I^2) P' + (a20 + a21 I + a22 I^2) P = 0.
struct OdeCoeffs {
  double a02 = 0.0;
  double a03 = 0.0;
  double a10 = 0.0;
  double a11 = 0.0;
  double a12 = 0.0;
  double a20 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;
};

/// Requires omega + eta > 0 and tau > 0 (DomainError otherwise).
QuadraticRelation quad_coeffs(const ModelParams& p);

/// n2 + A n1 - B.
double quad_residual(const MomentSet& m, const ModelParams& p);

/// 2 tau <n> - (omega - eta) + (omega + eta) <D>: vanishes on every stationary state.
double inversion_residual(const MomentSet& m, const ModelParams& p);

OdeCoeffs ode_coeffs(const ModelParams& p);

/// P(0) of the phase-averaged P function given the mean photon number.
/// Requires omega > 0.
double boundary_p0(const ModelParams& p, double n1);

/// Which n^2 coefficient to use in the second (n^4) moment relation. The
/// relation as usually quoted carries -6 a03; only -60 a03 makes it vanish on
/// exact stationary moments and reduce to the closed special-case system.
enum class A03Coefficient { kMinus6, kMinus60 };

struct MomentResiduals {
  double r1 = 0.0;  // n^3 relation
  double r2 = 0.0;  // n^4 relation
};

MomentResiduals moment_residuals(const MomentSet& m, const ModelParams& p,
                                 A03Coefficient variant = A03Coefficient::kMinus6);

struct ThreeMoments {
  double n1 = 0.0;
  double n2 = 0.0;
  double n3 = 0.0;
};

struct TwoMoments {
  double n1 = 0.0;
  double n2 = 0.0;

  std::optional<double> q() const { return mandel_q(n1, n2); }
};

/// Linear solve of the closed three-equation system at omega = tau, eta = 0,
/// with <a†^4 a^4> neglected.
ThreeMoments special_system_solve(double tau);

/// Closed form of the same system (second-order approximation).
TwoMoments second_order_closed_form(double tau);

/// First-order approximation: <a†^3 a^3> = 0, i.e. n3 = 3 n2 - 2 n1, together
/// with n2 = 1 - 2 tau^2 n1 and n3 + (6 tau^2 - 1) n2 - (6 tau^2 + 3/2) n1 = 0.
TwoMoments first_order_closed_form(double tau);

}  // namespace salaser

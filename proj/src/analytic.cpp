#include "salaser/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "salaser/errors.hpp"

namespace salaser {

namespace {

void require_tau(double tau) {
  if (!std::isfinite(tau) || tau < 0.0) {
    std::ostringstream os;
    os << "tau must be finite and non-negative, got " << tau;
    throw DomainError(os.str());
  }
}

}  // namespace

QuadraticRelation quad_coeffs(const ModelParams& p) {
  p.validate();
  const double w = p.omega;
  const double e = p.eta;
  const double t = p.tau;
  if (w + e == 0.0) throw DomainError("quad_coeffs: omega + eta must be positive");
  if (t == 0.0) throw DomainError("quad_coeffs: tau must be positive");
  const double s = w + e + t;
  QuadraticRelation r;
  r.a = s / (2.0 * (w + e)) - ((w - e + t) / (2.0 * t) - s * s / 2.0);
  r.b = w * s / (2.0 * t * (w + e));
  return r;
}

double quad_residual(const MomentSet& m, const ModelParams& p) {
  const QuadraticRelation r = quad_coeffs(p);
  return m.n2 + r.a * m.n1 - r.b;
}

double inversion_residual(const MomentSet& m, const ModelParams& p) {
  return 2.0 * p.tau * m.n1 - (p.omega - p.eta) + (p.omega + p.eta) * m.d;
}

OdeCoeffs ode_coeffs(const ModelParams& p) {
  p.validate();
  const double w = p.omega;
  const double e = p.eta;
  const double t = p.tau;
  const double t2 = t * t;
  const double t3 = t2 * t;
  OdeCoeffs c;
  c.a02 = t3 / 2.0 * (t - w - e);
  c.a03 = t2 * t2;
  c.a10 = w / 4.0 * (t - w - e);
  c.a11 = t / 4.0 *
          (3.0 * e * e * t + 9.0 * t3 + 4.0 * w - 12.0 * t2 * w +
           e * (2.0 - 12.0 * t2 + 6.0 * t * w) + t * (3.0 * w * w - 2.0));
  c.a12 = t2 / 2.0 * (7.0 * t2 - 3.0 * t * e - 3.0 * t * w - 2.0);
  c.a20 = 0.25 * (6.0 * t2 * t2 + w * w - e * e * e * t - 11.0 * t3 * w - t * w * w * w +
                  e * e * (6.0 * t2 - 3.0 * t * w - 1.0) +
                  e * t * (12.0 * t * w + 4.0 - 11.0 * t2 - 3.0 * w * w) +
                  t2 * (6.0 * w * w - 3.0));
  c.a21 = t / 2.0 *
          (e * e * t + 3.0 * t3 - 2.0 * w - 4.0 * t2 * w + t * w * w +
           2.0 * e * t * (w - 2.0 * t));
  c.a22 = t2;
  return c;
}

double boundary_p0(const ModelParams& p, double n1) {
  p.validate();
  const double w = p.omega;
  const double e = p.eta;
  const double t = p.tau;
  if (w == 0.0) throw DomainError("boundary_p0: omega must be positive");
  if (t == 0.0) throw DomainError("boundary_p0: tau must be positive");
  const double prefactor = 2.0 * t * (w + e - t) / (std::numbers::pi * w * (w + e));
  return prefactor * (n1 - ((w - e) / (2.0 * t) - (w + e) * (w + e - t) / 2.0));
}

MomentResiduals moment_residuals(const MomentSet& m, const ModelParams& p,
                                 A03Coefficient variant) {
  const OdeCoeffs c = ode_coeffs(p);
  const double k03 = variant == A03Coefficient::kMinus60 ? -60.0 : -6.0;
  MomentResiduals r;
  r.r1 = c.a22 * m.n3 + (12.0 * c.a03 - 3.0 * c.a12 + c.a21 - 3.0 * c.a22) * m.n2 +
         (6.0 * c.a02 - 12.0 * c.a03 - 2.0 * c.a11 + 3.0 * c.a12 + c.a20 - c.a21 +
          2.0 * c.a22) *
             m.n1 -
         c.a10;
  r.r2 = c.a22 * m.n4 + (20.0 * c.a03 - 4.0 * c.a12 + c.a21 - 6.0 * c.a22) * m.n3 +
         (k03 * c.a03 - 3.0 * c.a11 + 12.0 * c.a12 + c.a20 - 3.0 * c.a21 + 12.0 * c.a02 +
          11.0 * c.a22) *
             m.n2 +
         (40.0 * c.a03 + 3.0 * c.a11 - 8.0 * c.a12 - c.a20 + 2.0 * c.a21 - 12.0 * c.a02 -
          2.0 * c.a10 - 6.0 * c.a22) *
             m.n1;
  return r;
}

ThreeMoments special_system_solve(double tau) {
  require_tau(tau);
  const double t2 = tau * tau;
  // rows: n2 + 2 t^2 n1 = 1
  //       n3 + (6 t^2 - 1) n2 - (6 t^2 + 3/2) n1 = 0
  //       (12 t^2 + 3) n3 - (36 t^2 + 11) n2 + (24 t^2 + 8) n1 = 0
  Eigen::Matrix3d m;
  m << 2.0 * t2, 1.0, 0.0,
      -(6.0 * t2 + 1.5), 6.0 * t2 - 1.0, 1.0,
      24.0 * t2 + 8.0, -(36.0 * t2 + 11.0), 12.0 * t2 + 3.0;
  const Eigen::Vector3d rhs(1.0, 0.0, 0.0);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "closed moment system is singular at tau = " << tau;
    throw ConvergenceError(os.str());
  }
  const Eigen::Vector3d x = lu.solve(rhs);
  return ThreeMoments{x(0), x(1), x(2)};
}

TwoMoments second_order_closed_form(double tau) {
  require_tau(tau);
  const double t2 = tau * tau;
  const double t4 = t2 * t2;
  const double den = 25.0 + 8.0 * t2 * (19.0 + 39.0 * t2 + 36.0 * t4);
  const double num2 = 5.0 + 12.0 * t2;
  return TwoMoments{4.0 * (4.0 + 21.0 * t2 + 36.0 * t4) / den, num2 * num2 / den};
}

TwoMoments first_order_closed_form(double tau) {
  require_tau(tau);
  const double t2 = tau * tau;
  // (6 t^2 + 2) n2 - (6 t^2 + 7/2) n1 = 0 with n2 = 1 - 2 t^2 n1
  const double g = 6.0 * t2 + 2.0;
  const double n1 = g / (2.0 * t2 * g + 6.0 * t2 + 3.5);
  return TwoMoments{n1, 1.0 - 2.0 * t2 * n1};
}

}  // namespace salaser

#include <doctest.h>

#include <cmath>
#include <random>

#include "salaser/analytic.hpp"
#include "salaser/errors.hpp"
#include "salaser/observables.hpp"
#include "salaser/strong_coupling.hpp"

using namespace salaser;

namespace {

// Cramer's rule for the first-order closure: unknowns (n1, n2, n3) with
//   2 t^2 n1 + n2 = 1
//   -(6 t^2 + 3/2) n1 + (6 t^2 - 1) n2 + n3 = 0
//   2 n1 - 3 n2 + n3 = 0           (<a†^3 a^3> = 0)
double first_order_oracle_n1(double t) {
  const double t2 = t * t;
  const double m[3][3] = {{2 * t2, 1, 0}, {-(6 * t2 + 1.5), 6 * t2 - 1, 1}, {2, -3, 1}};
  auto det3 = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  double mx[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mx[i][j] = m[i][j];
  mx[0][0] = 1;
  mx[1][0] = 0;
  mx[2][0] = 0;
  return det3(mx) / det3(m);
}

MomentSet numeric_moments(const ModelParams& p) {
  return moments(steady_state(p, SpaceConfig(20), 1e-9).rho);
}

}  // namespace

TEST_CASE("quadratic relation coefficients") {
  SUBCASE("balanced regime reduces to (2 tau^2, 1)") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> tau(1e-3, 5.0);
    for (int i = 0; i < 100; ++i) {
      const double t = tau(rng);
      const QuadraticRelation q = quad_coeffs(ModelParams::balanced(t));
      CHECK(std::abs(q.a - 2 * t * t) < 1e-12 * std::max(1.0, t * t));
      CHECK(std::abs(q.b - 1.0) < 1e-12);
    }
  }
  SUBCASE("hand-evaluated point") {
    const QuadraticRelation q = quad_coeffs(ModelParams::make(1, 1, 1));
    CHECK(q.a == doctest::Approx(4.75).epsilon(1e-14));
    CHECK(q.b == doctest::Approx(0.75).epsilon(1e-14));
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(quad_coeffs(ModelParams::make(0, 0, 1)), DomainError);
    CHECK_THROWS_AS(quad_coeffs(ModelParams::make(1, 0, 0)), DomainError);
  }
  SUBCASE("residual vanishes on a numeric steady state") {
    const ModelParams p = ModelParams::make(1.0, 0.3, 0.7);
    CHECK(std::abs(quad_residual(numeric_moments(p), p)) < 1e-6);
    CHECK(quad_coeffs(p).b > 0.0);
  }
  SUBCASE("residual on a coarse general grid") {
    for (double w : {0.2, 1.1, 2.0})
      for (double e : {0.2, 1.1, 2.0})
        for (double t : {0.2, 1.1, 2.0}) {
          const ModelParams p = ModelParams::make(w, e, t);
          CHECK(std::abs(quad_residual(numeric_moments(p), p)) < 1e-6);
        }
  }
}

TEST_CASE("ODE coefficients") {
  SUBCASE("balanced regime list") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> tau(1e-3, 5.0);
    for (int i = 0; i < 50; ++i) {
      const double t = tau(rng);
      const double t2 = t * t;
      const double scale = 1e-12 * std::max(1.0, t2 * t2);
      const OdeCoeffs c = ode_coeffs(ModelParams::balanced(t));
      CHECK(std::abs(c.a02) < scale);
      CHECK(c.a03 == t2 * t2);
      CHECK(std::abs(c.a10) < scale);
      CHECK(std::abs(c.a11 - t2 / 2) < scale);
      CHECK(std::abs(c.a12 - t2 * (2 * t2 - 1)) < scale);
      CHECK(std::abs(c.a20 + t2 / 2) < scale);
      CHECK(std::abs(c.a21 + t2) < scale);
      CHECK(c.a22 == t2);
    }
  }
  SUBCASE("a22 = tau^2 for any input") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> r(0.0, 4.0);
    for (int i = 0; i < 20; ++i) {
      const ModelParams p = ModelParams::make(r(rng), r(rng), r(rng));
      CHECK(ode_coeffs(p).a22 == p.tau * p.tau);
      CHECK(ode_coeffs(p).a03 == (p.tau * p.tau) * (p.tau * p.tau));
    }
  }
  SUBCASE("hand-evaluated point") {
    const OdeCoeffs c = ode_coeffs(ModelParams::make(1, 1, 1));
    CHECK(c.a02 == -0.5);
    CHECK(c.a03 == 1.0);
  }
}

TEST_CASE("boundary value P(0)") {
  CHECK(boundary_p0(ModelParams::balanced(0.8), 0.3) == 0.0);
  CHECK(boundary_p0(ModelParams::balanced(0.5), second_order_closed_form(0.5).n1) == 0.0);

  const ModelParams p = ModelParams::make(1, 1, 1);
  // bracket = n1 - ((w - e)/(2t) - (w + e)(w + e - t)/2) = n1 + 1
  for (double n1 : {-3.0, -0.5, 0.4, 2.0}) {
    const double v = boundary_p0(p, n1);
    CHECK(std::isfinite(v));
    CHECK((v > 0) == (n1 + 1.0 > 0));
  }
  CHECK_THROWS_AS(boundary_p0(ModelParams::make(0, 1, 1), 0.1), DomainError);
}

TEST_CASE("moment relations") {
  SUBCASE("cubic relation at tau -> 0 on the exact limiting moments") {
    const ExactMoments e = exact_moments();
    CHECK(std::abs(e.n3 - e.n2 - 1.5 * e.n1) < 1e-4);
    const double t = 1e-3;
    const MomentSet m{e.n1, e.n2, e.n3, 0.0, 0.0, {}};
    CHECK(std::abs(moment_residuals(m, ModelParams::balanced(t)).r1 / (t * t)) < 1e-4);
  }
  SUBCASE("cubic relation on numeric steady states") {
    CHECK(std::abs(moment_residuals(numeric_moments(ModelParams::balanced(0.5)),
                                    ModelParams::balanced(0.5))
                       .r1) < 1e-6);
    const ModelParams g = ModelParams::make(1.3, 0.4, 0.9);
    CHECK(std::abs(moment_residuals(numeric_moments(g), g).r1) < 1e-6);
  }
  SUBCASE("quartic relation: only the -60 a03 coefficient vanishes") {
    for (const ModelParams& p : {ModelParams::balanced(0.5), ModelParams::make(1.5, 0.1, 0.4)}) {
      const MomentSet m = numeric_moments(p);
      CHECK(std::abs(moment_residuals(m, p, A03Coefficient::kMinus6).r2) > 1e-2);
      CHECK(std::abs(moment_residuals(m, p, A03Coefficient::kMinus60).r2) < 1e-6);
    }
  }
  SUBCASE("-60 variant reduces to the closed special system plus <a†^4 a^4>") {
    const double t = 0.9;
    const MomentSet m = numeric_moments(ModelParams::balanced(t));
    const double t2 = t * t;
    const double factorial4 = m.n4 - 6 * m.n3 + 11 * m.n2 - 6 * m.n1;
    const double closed = (12 * t2 + 3) * m.n3 - (36 * t2 + 11) * m.n2 + (24 * t2 + 8) * m.n1;
    const double r2 = moment_residuals(m, ModelParams::balanced(t), A03Coefficient::kMinus60).r2;
    CHECK(std::abs(r2 / t2 - (closed + factorial4)) < 1e-9);
  }
}

TEST_CASE("second-order approximation") {
  SUBCASE("tau = 0") {
    const ThreeMoments s = special_system_solve(0.0);
    CHECK(std::abs(s.n1 - 0.64) < 1e-12);
    CHECK(std::abs(s.n2 - 1.0) < 1e-12);
    CHECK(std::abs(s.n3 - (11.0 - 8.0 * 0.64) / 3.0) < 1e-9);
    const TwoMoments c = second_order_closed_form(0.0);
    CHECK(c.n1 == 0.64);
    CHECK(c.n2 == 1.0);
    CHECK(std::abs(*c.q() + 0.0775) < 1e-4);
  }
  SUBCASE("optimum near 1/sqrt 2") {
    const ThreeMoments s = special_system_solve(1.0 / std::sqrt(2.0));
    CHECK(std::abs(*mandel_q(s.n1, s.n2) + 0.15) < 0.005);

    double best_tau = 0.0;
    double best_q = INFINITY;
    for (int i = 0; i <= 2900; ++i) {
      const double t = 0.1 + i * 1e-3;
      const double q = *second_order_closed_form(t).q();
      if (q < best_q) best_q = q, best_tau = t;
    }
    CHECK(best_tau >= 0.6);
    CHECK(best_tau <= 0.8);
  }
  SUBCASE("closed form equals the linear solve") {
    for (int i = 0; i < 50; ++i) {
      const double t = 3.0 * i / 49.0;
      const ThreeMoments s = special_system_solve(t);
      const TwoMoments c = second_order_closed_form(t);
      CHECK(std::abs(s.n1 - c.n1) < 1e-12);
      CHECK(std::abs(s.n2 - c.n2) < 1e-12);
    }
  }
  SUBCASE("satisfies the balanced quadratic relation") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> tau(0.0, 5.0);
    for (int i = 0; i < 100; ++i) {
      const double t = tau(rng);
      const TwoMoments c = second_order_closed_form(t);
      CHECK(std::abs(c.n2 + 2 * t * t * c.n1 - 1.0) < 1e-12);
    }
  }
  SUBCASE("weak-coupling asymptote") {
    CHECK(std::abs(second_order_closed_form(10.0).n1 / 0.005 - 1.0) < 0.1);
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(second_order_closed_form(-0.1), DomainError);
    CHECK_THROWS_AS(special_system_solve(-0.1), DomainError);
  }
}

TEST_CASE("first-order approximation") {
  CHECK(first_order_closed_form(0.0).n1 == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  for (double t : {0.0, 0.3, 0.7, 1.0, 2.5}) {
    const TwoMoments f = first_order_closed_form(t);
    CHECK(f.n1 == doctest::Approx(first_order_oracle_n1(t)).epsilon(1e-12));
    CHECK(std::abs(f.n2 + 2 * t * t * f.n1 - 1.0) < 1e-12);
  }
  double prev = first_order_closed_form(0.5).n1;
  for (double t = 0.6; t < 50.0; t *= 1.3) {
    const double n1 = first_order_closed_form(t).n1;
    CHECK(n1 < prev);
    prev = n1;
  }
  CHECK(prev < 1e-3);
  CHECK(std::abs(first_order_closed_form(0.0).n1 - second_order_closed_form(0.0).n1) > 0.05);
}

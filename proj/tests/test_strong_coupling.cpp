#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "salaser/analytic.hpp"
#include "salaser/errors.hpp"
#include "salaser/observables.hpp"
#include "salaser/strong_coupling.hpp"

using namespace salaser;

namespace {

// Gamma(n + 3/2) by exact recursion from Gamma(3/2) = sqrt(pi)/2.
double half_integer_gamma(int n) {
  double g = std::sqrt(std::numbers::pi) / 2.0;
  for (int k = 0; k < n; ++k) g *= (k + 1.5);
  return g;
}

// sum_n 2^-n (n+1) / Gamma(n + 3/2), summed directly.
double unnormalized_series_sum() {
  double s = 0.0;
  for (int n = 0; n < 60; ++n) s += std::pow(2.0, -n) * (n + 1) / half_integer_gamma(n);
  return s;
}

double steady_tv(double tau) {
  const SteadyStateResult ss = steady_state(ModelParams::balanced(tau), SpaceConfig(20), 1e-9);
  return total_variation(photon_distribution(ss.rho).probs, exact_distribution().probs);
}

}  // namespace

TEST_CASE("erf at 1/sqrt 2") {
  CHECK(std::abs(std::erf(1.0 / std::numbers::sqrt2) - 0.682689492137) < 1e-11);
}

TEST_CASE("normalization constant") {
  const double c = norm_constant();
  CHECK(std::abs(c - 0.46383) < 1e-5);
  CHECK(std::abs(1.0 / c - unnormalized_series_sum()) < 1e-10);
  CHECK(c > 0.0);
  CHECK(c < 1.0);
}

TEST_CASE("exact distribution") {
  const ExactDistribution d = exact_distribution(1e-16);
  CHECK(d.probs[1] / d.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(d.cutoff == static_cast<int>(d.probs.size()) - 1);
  CHECK(d.c_norm == norm_constant());

  double sum = 0.0;
  for (double p : d.probs) {
    CHECK(p > 0.0);
    sum += p;
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);

  for (int n = 0; n + 1 < static_cast<int>(d.probs.size()); ++n) {
    const double ratio = d.probs[n + 1] / d.probs[n];
    CHECK(std::abs(ratio - (n + 2.0) / ((n + 1.0) * (2.0 * n + 3.0))) < 1e-12);
  }

  SUBCASE("closed form with exact half-integer Gamma") {
    for (int n = 0; n <= 30 && n < static_cast<int>(d.probs.size()); ++n) {
      const double direct = d.c_norm * std::pow(2.0, -n) * (n + 1) / half_integer_gamma(n);
      CHECK(std::abs(direct - d.probs[n]) < 1e-12);
    }
  }
  SUBCASE("tail bound") {
    for (double tol : {1e-3, 1e-6, 1e-9}) {
      const ExactDistribution t = exact_distribution(tol);
      double head = 0.0;
      for (double p : t.probs) head += p;
      CHECK(head >= 1.0 - tol);
      CHECK(t.probs.back() < tol);
    }
  }
  CHECK_THROWS_AS(exact_distribution(0.0), DomainError);
}

TEST_CASE("exact moments") {
  const auto start = std::chrono::steady_clock::now();
  const ExactMoments m = exact_moments();
  const double q = exact_q();
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(std::abs(m.n1 - 0.630843) < 1e-5);
  CHECK(std::abs(m.n2 - 1.0) < 1e-6);
  CHECK(std::abs(q + 0.0456627) < 1e-5);
  CHECK(q == doctest::Approx((m.n2 - m.n1 * m.n1) / m.n1 - 1.0).epsilon(1e-14));
  // Limit of the quadratic relation: A -> 0, B = 1.
  CHECK(quad_coeffs(ModelParams::balanced(1e-6)).b == doctest::Approx(1.0));
  CHECK(std::abs(m.n3 - m.n2 - 1.5 * m.n1) < 1e-8);
  CHECK(std::chrono::duration<double>(elapsed).count() < 1e-3);
}

TEST_CASE("P function") {
  CHECK(p_function(0.0) == 0.0);
  CHECK(std::abs(p_function_constant() + 0.16659) < 1e-5);
  CHECK(p_function_constant() ==
        doctest::Approx(-2.0 * norm_constant() / std::pow(std::numbers::pi, 1.5)));
  CHECK(std::abs(p_function(0.4999999)) > 1e6 * std::abs(p_function(0.25)));
  CHECK(p_function(0.1) < 0.0);
  CHECK_THROWS_AS(p_function(0.5), DomainError);
  CHECK_THROWS_AS(p_function(-0.1), DomainError);
}

TEST_CASE("recurrence variants") {
  const RecurrenceDiagnostic full = diagnose_recurrence(RecurrenceVariant::kFullRatio);
  const RecurrenceDiagnostic cut = diagnose_recurrence(RecurrenceVariant::kTruncatedRatio);
  CHECK(full.residual < 1e-10);
  CHECK(full.n1 == doctest::Approx(exact_moments().n1));
  CHECK(cut.residual > 1e-2);
  CHECK(cut.n2 == doctest::Approx(0.5));
}

TEST_CASE("numeric steady states converge to the exact limit") {
  const double tv05 = steady_tv(0.05);
  const double tv02 = steady_tv(0.02);
  CHECK(tv05 < 0.05);
  CHECK(tv02 < tv05);
}

#pragma once

#include <vector>

namespace salaser {

/// Exact stationary photon distribution in the limit omega = tau -> 0, eta = 0:
///
///   rho(n) = C 2^-n (n + 1) / Gamma(n + 3/2),
///   C = sqrt(pi) / (1 + sqrt(2 pi e) erf(1/sqrt 2)).
struct ExactDistribution {
  std::vector<double> probs;  // rho(0..cutoff)
  double c_norm = 0.0;
  int cutoff = 0;
};

double norm_constant();

/// Prefactor C0 of the phase-averaged P function in the same limit.
double p_function_constant();

/// Terms are generated by rho(n+1) = rho(n) (n+2)/((n+1)(2n+3)) from
/// rho(0) = C / Gamma(3/2). For n >= 1 the ratio is below 1/2, so the mass
/// beyond the cutoff N is at most rho(N); the series stops once rho(N) < tol.
ExactDistribution exact_distribution(double tol = 1e-16);

struct ExactMoments {
  double n1 = 0.0;
  double n2 = 0.0;
  double n3 = 0.0;
  double q = 0.0;
};

ExactMoments exact_moments();
double exact_q();

/// P(I) = C0 I e^I / (1 - 2I)^{3/2} on 0 <= I < 1/2; DomainError elsewhere.
double p_function(double intensity);

/// Two candidate ratios rho(n+1)/rho(n) for the limiting distribution.
enum class RecurrenceVariant {
  kFullRatio,       // (n+2) / ((n+1)(2n+3)), consistent with the closed form
  kTruncatedRatio,  // 1 / (2n+3), missing the (n+2)/(n+1) factor
};

double recurrence_ratio(RecurrenceVariant variant, int n);

struct RecurrenceDiagnostic {
  RecurrenceVariant variant;
  double n1 = 0.0;
  double n2 = 0.0;
  double n3 = 0.0;
  /// max(|n2 - 1|, |n3 - n2 - 3/2 n1|): both vanish for the true limit.
  double residual = 0.0;
};

/// Builds the normalized distribution from `variant` and evaluates the moment
/// identities that the tau -> 0 limit must satisfy.
RecurrenceDiagnostic diagnose_recurrence(RecurrenceVariant variant);

}  // namespace salaser

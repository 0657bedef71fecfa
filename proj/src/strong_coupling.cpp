#include "salaser/strong_coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "salaser/errors.hpp"

namespace salaser {

namespace {

// 1 + sqrt(2 pi e) erf(1/sqrt 2)
double shared_denominator() {
  using std::numbers::e;
  using std::numbers::pi;
  return 1.0 + std::sqrt(2.0 * pi * e) * std::erf(1.0 / std::numbers::sqrt2);
}

}  // namespace

double norm_constant() { return std::sqrt(std::numbers::pi) / shared_denominator(); }

double p_function_constant() { return -2.0 / (std::numbers::pi * shared_denominator()); }

ExactDistribution exact_distribution(double tol) {
  if (!(tol > 0.0)) throw DomainError("exact_distribution: tol must be positive");
  ExactDistribution out;
  out.c_norm = norm_constant();
  // Gamma(3/2) = sqrt(pi)/2
  double term = out.c_norm * 2.0 / std::sqrt(std::numbers::pi);
  out.probs.push_back(term);
  for (int n = 0;; ++n) {
    term *= recurrence_ratio(RecurrenceVariant::kFullRatio, n);
    out.probs.push_back(term);
    if (term < tol) break;
  }
  out.cutoff = static_cast<int>(out.probs.size()) - 1;
  return out;
}

ExactMoments exact_moments() {
  const ExactDistribution d = exact_distribution();
  ExactMoments m;
  for (std::size_t n = 0; n < d.probs.size(); ++n) {
    const double x = static_cast<double>(n);
    m.n1 += x * d.probs[n];
    m.n2 += x * x * d.probs[n];
    m.n3 += x * x * x * d.probs[n];
  }
  m.q = (m.n2 - m.n1 * m.n1) / m.n1 - 1.0;
  return m;
}

double exact_q() { return exact_moments().q; }

double p_function(double intensity) {
  if (!(intensity >= 0.0) || !(intensity < 0.5)) {
    std::ostringstream os;
    os << "p_function: intensity must lie in [0, 1/2), got " << intensity;
    throw DomainError(os.str());
  }
  return p_function_constant() * intensity * std::exp(intensity) /
         std::pow(1.0 - 2.0 * intensity, 1.5);
}

double recurrence_ratio(RecurrenceVariant variant, int n) {
  const double x = static_cast<double>(n);
  switch (variant) {
    case RecurrenceVariant::kFullRatio:
      return (x + 2.0) / ((x + 1.0) * (2.0 * x + 3.0));
    case RecurrenceVariant::kTruncatedRatio:
      return 1.0 / (2.0 * x + 3.0);
  }
  return 0.0;
}

RecurrenceDiagnostic diagnose_recurrence(RecurrenceVariant variant) {
  std::vector<double> p{1.0};
  double total = 1.0;
  for (int n = 0; p.back() > 1e-18 * total; ++n) {
    p.push_back(p.back() * recurrence_ratio(variant, n));
    total += p.back();
  }
  RecurrenceDiagnostic r{variant};
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double x = static_cast<double>(n);
    const double w = p[n] / total;
    r.n1 += x * w;
    r.n2 += x * x * w;
    r.n3 += x * x * x * w;
  }
  r.residual = std::max(std::abs(r.n2 - 1.0), std::abs(r.n3 - r.n2 - 1.5 * r.n1));
  return r;
}

}  // namespace salaser

#include "salaser/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "salaser/errors.hpp"

namespace salaser {

namespace {
constexpr double kClampFloor = -1e-10;
constexpr double kRejectFloor = -1e-8;
}  // namespace

std::optional<double> mandel_q(double n1, double n2) {
  if (n1 < kMinMeanForQ) return std::nullopt;
  return (n2 - n1 * n1) / n1 - 1.0;
}

double PhotonDistribution::sum() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

double PhotonDistribution::moment(int k) const {
  double s = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    s += std::pow(static_cast<double>(n), k) * probs[n];
  }
  return s;
}

PhotonDistribution photon_distribution(const DensityMatrix& rho) {
  const SpaceConfig& s = rho.space();
  PhotonDistribution dist;
  dist.probs.resize(s.field_dim());
  for (int n = 0; n <= s.n_max; ++n) {
    double p = rho.matrix()(s.index(kLowerLevel, n), s.index(kLowerLevel, n)).real() +
               rho.matrix()(s.index(kUpperLevel, n), s.index(kUpperLevel, n)).real();
    if (p < kRejectFloor) {
      std::ostringstream os;
      os << "negative photon probability rho(" << n << ") = " << p;
      throw InvalidState(os.str());
    }
    if (p < 0.0 && p >= kClampFloor) p = 0.0;
    dist.probs[n] = p;
  }
  return dist;
}

MomentSet moments(const DensityMatrix& rho) {
  const PhotonDistribution dist = photon_distribution(rho);
  const SpaceConfig& s = rho.space();
  MomentSet m;
  m.n1 = dist.moment(1);
  m.n2 = dist.moment(2);
  m.n3 = dist.moment(3);
  m.n4 = dist.moment(4);
  double upper = 0.0;
  double lower = 0.0;
  for (int n = 0; n <= s.n_max; ++n) {
    upper += rho.matrix()(s.index(kUpperLevel, n), s.index(kUpperLevel, n)).real();
    lower += rho.matrix()(s.index(kLowerLevel, n), s.index(kLowerLevel, n)).real();
  }
  m.d = upper - lower;
  m.q = mandel_q(m.n1, m.n2);
  return m;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    tv += std::abs(a - b);
  }
  return 0.5 * tv;
}

}  // namespace salaser

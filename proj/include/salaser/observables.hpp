#pragma once

#include <optional>
#include <vector>

#include "salaser/liouvillian.hpp"

namespace salaser {

/// Photon-number statistics of a single state.
struct MomentSet {
  double n1 = 0.0;  // <n>
  double n2 = 0.0;  // <n^2>
  double n3 = 0.0;
  double n4 = 0.0;
  double d = 0.0;   // atomic inversion <|2><2| - |1><1|>
  std::optional<double> q;  // Mandel Q; empty when n1 < kMinMeanForQ
};

inline constexpr double kMinMeanForQ = 1e-12;

/// (n2 - n1^2)/n1 - 1, or nullopt when n1 is below kMinMeanForQ.
std::optional<double> mandel_q(double n1, double n2);

struct PhotonDistribution {
  std::vector<double> probs;  // rho(n), n = 0..n_max

  double sum() const;
  /// k-th raw moment sum_n n^k rho(n).
  double moment(int k) const;
};

/// rho(n) = sum_atom <atom, n|rho|atom, n>. Entries in [-1e-10, 0) are reported
/// as 0; anything below -1e-8 throws InvalidState.
PhotonDistribution photon_distribution(const DensityMatrix& rho);

MomentSet moments(const DensityMatrix& rho);

/// 1/2 sum_n |p(n) - q(n)|, the shorter vector padded with zeros.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace salaser

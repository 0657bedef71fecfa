#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "salaser/liouvillian.hpp"

namespace salaser {

/// One tau point of the figure data: numeric steady state next to the two
/// analytic approximations.
struct SweepRow {
  double tau = 0.0;
  double mean_n_numeric = 0.0;
  std::optional<double> q_numeric;
  double mean_n_order2 = 0.0;
  std::optional<double> q_order2;
  double mean_n_order1 = 0.0;
  std::optional<double> q_order1;
};

struct SweepConfig {
  double tau_min = 0.05;
  double tau_max = 3.0;
  int points = 60;
  int n_max = 20;
  double tol = 1e-9;
  /// When set, omega and eta are held fixed instead of omega = tau, eta = 0.
  /// The analytic columns are then NaN.
  std::optional<double> fixed_omega;
  std::optional<double> fixed_eta;
  /// Worker threads; values < 1 run sequentially.
  int workers = 1;
};

struct SweepFailure {
  double tau = 0.0;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepRow> rows;         // empty if any point failed
  std::vector<SweepFailure> failures;
};

/// tau_i = tau_min + i (tau_max - tau_min) / (points - 1), ascending.
std::vector<double> tau_grid(double tau_min, double tau_max, int points);

SweepRow sweep_point(const ModelParams& params, const SpaceConfig& space, double tol,
                     bool balanced);

/// Points are independent; the row order follows the grid regardless of the
/// number of workers.
SweepResult run_sweep(const SweepConfig& config);

inline constexpr const char* kSweepHeader =
    "tau,mean_n_numeric,q_numeric,mean_n_order2,q_order2,mean_n_order1,q_order1";

/// "%.12e", or "nan" for an undefined value.
std::string format_value(double v);
std::string format_value(const std::optional<double>& v);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace salaser

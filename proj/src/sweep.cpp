#include "salaser/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "salaser/analytic.hpp"
#include "salaser/errors.hpp"
#include "salaser/observables.hpp"

namespace salaser {

std::vector<double> tau_grid(double tau_min, double tau_max, int points) {
  if (points < 1) throw DomainError("sweep needs at least one point");
  if (!(tau_min >= 0.0) || !(tau_max >= tau_min) || !std::isfinite(tau_max)) {
    throw DomainError("sweep range must satisfy 0 <= tau_min <= tau_max");
  }
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = points == 1 ? tau_min
                          : tau_min + (tau_max - tau_min) * static_cast<double>(i) /
                                          static_cast<double>(points - 1);
  }
  return grid;
}

SweepRow sweep_point(const ModelParams& params, const SpaceConfig& space, double tol,
                     bool balanced) {
  const SteadyStateResult ss = steady_state(params, space, tol);
  const MomentSet m = moments(ss.rho);
  SweepRow row;
  row.tau = params.tau;
  row.mean_n_numeric = m.n1;
  row.q_numeric = m.q;
  if (balanced) {
    const TwoMoments o2 = second_order_closed_form(params.tau);
    const TwoMoments o1 = first_order_closed_form(params.tau);
    row.mean_n_order2 = o2.n1;
    row.q_order2 = o2.q();
    row.mean_n_order1 = o1.n1;
    row.q_order1 = o1.q();
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.mean_n_order2 = nan;
    row.mean_n_order1 = nan;
  }
  return row;
}

SweepResult run_sweep(const SweepConfig& config) {
  const std::vector<double> grid = tau_grid(config.tau_min, config.tau_max, config.points);
  const bool balanced = !config.fixed_omega && !config.fixed_eta;
  const SpaceConfig space(config.n_max);

  std::vector<std::optional<SweepRow>> rows(grid.size());
  std::vector<std::string> errors(grid.size());

  auto solve = [&](std::size_t i) {
    try {
      const double tau = grid[i];
      const ModelParams p = balanced ? ModelParams::balanced(tau)
                                     : ModelParams::make(config.fixed_omega.value_or(tau),
                                                         config.fixed_eta.value_or(0.0), tau);
      rows[i] = sweep_point(p, space, config.tol, balanced);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  };

  const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(grid.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) solve(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) solve(i);
      });
    }
  }

  SweepResult result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!rows[i]) result.failures.push_back({grid[i], errors[i]});
  }
  if (result.failures.empty()) {
    result.rows.reserve(grid.size());
    for (auto& r : rows) result.rows.push_back(*r);
  }
  return result;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string format_value(const std::optional<double>& v) {
  return v ? format_value(*v) : std::string("nan");
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_value(r.tau) << ',' << format_value(r.mean_n_numeric) << ','
        << format_value(r.q_numeric) << ',' << format_value(r.mean_n_order2) << ','
        << format_value(r.q_order2) << ',' << format_value(r.mean_n_order1) << ','
        << format_value(r.q_order1) << '\n';
  }
}

}  // namespace salaser

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace salaser {

/// Outcome of one cross-module invariant.
struct CheckResult {
  std::string check_name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// Informational checks are reported but do not affect the exit status.
  bool required = true;
  std::string detail;
};

struct CheckConfig {
  /// Points per axis of the (omega, eta, tau) grid over [0.2, 2]^3.
  int grid_size = 5;
  int n_max = 20;
};

std::vector<CheckResult> run_checks(const CheckConfig& config);

bool all_required_pass(const std::vector<CheckResult>& checks);

nlohmann::json to_json(const CheckResult& check);
nlohmann::json to_json(const std::vector<CheckResult>& checks);

}  // namespace salaser

#include "salaser/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "salaser/analytic.hpp"
#include "salaser/checks.hpp"
#include "salaser/errors.hpp"
#include "salaser/observables.hpp"
#include "salaser/strong_coupling.hpp"
#include "salaser/sweep.hpp"

namespace salaser::cli {

namespace {

// Usage problem detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RateFlags {
  std::optional<double> tau, omega, eta;
  std::optional<double> g, kappa, gamma, pump;
};

void add_rate_flags(CLI::App& cmd, RateFlags& f) {
  cmd.add_option("--tau", f.tau, "cavity decay kappa/2g");
  cmd.add_option("--omega", f.omega, "incoherent pump Gamma/2g");
  cmd.add_option("--eta", f.eta, "spontaneous emission gamma/2g (default 0)");
  cmd.add_option("--g", f.g, "atom-field coupling (dimensional)");
  cmd.add_option("--kappa", f.kappa, "cavity decay rate (dimensional)");
  cmd.add_option("--gamma", f.gamma, "spontaneous emission rate (dimensional, default 0)");
  cmd.add_option("--pump", f.pump, "pump rate Gamma (dimensional)");
}

void require_non_negative(const std::optional<double>& v, const char* flag) {
  if (v && (!std::isfinite(*v) || *v < 0.0)) {
    throw UsageError(std::string(flag) + " must be a finite non-negative number");
  }
}

ModelParams resolve_params(const RateFlags& f) {
  require_non_negative(f.tau, "--tau");
  require_non_negative(f.omega, "--omega");
  require_non_negative(f.eta, "--eta");
  require_non_negative(f.kappa, "--kappa");
  require_non_negative(f.gamma, "--gamma");
  require_non_negative(f.pump, "--pump");
  if (f.g && (!std::isfinite(*f.g) || *f.g <= 0.0)) {
    throw UsageError("--g must be a finite positive number");
  }
  const bool dimensionless = f.tau || f.omega || f.eta;
  const bool dimensional = f.g || f.kappa || f.gamma || f.pump;
  if (dimensionless && dimensional) {
    throw UsageError("give either --tau/--omega/--eta or --g/--kappa/--gamma/--pump, not both");
  }
  if (dimensional) {
    if (!f.g || !f.kappa || !f.pump) {
      throw UsageError("dimensional input needs --g, --kappa and --pump");
    }
    return ModelParams::from_dimensional(*f.g, *f.kappa, f.gamma.value_or(0.0), *f.pump);
  }
  if (!f.tau || !f.omega) throw UsageError("--tau and --omega are required");
  return ModelParams::make(*f.omega, f.eta.value_or(0.0), *f.tau);
}

std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir && p.is_relative()) {
    p = std::filesystem::path(dir) / p;
  }
  return p;
}

// Writes `text` to --out if given, otherwise to `out`.
void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path p = output_path(out_file);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + p.string());
  f << text;
}

double residual_or_nan(const MomentSet& m, const ModelParams& p) {
  if (p.omega + p.eta == 0.0 || p.tau == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return quad_residual(m, p);
}

nlohmann::json json_number(const std::optional<double>& v) {
  if (!v || std::isnan(*v)) return "nan";
  return *v;
}

// ---- steady ----

struct SteadyArgs {
  RateFlags rates;
  int n_max = 20;
  double tol = 1e-9;
  std::string format = "csv";
  std::string out_file;
};

int cmd_steady(const SteadyArgs& a, std::ostream& out) {
  const ModelParams p = resolve_params(a.rates);
  const SteadyStateResult ss = steady_state(p, SpaceConfig(a.n_max), a.tol);
  const MomentSet m = moments(ss.rho);
  const PhotonDistribution dist = photon_distribution(ss.rho);
  const double quad = residual_or_nan(m, p);
  const double inv = inversion_residual(m, p);

  std::ostringstream os;
  if (a.format == "json") {
    nlohmann::json j;
    j["params"] = {{"omega", p.omega}, {"eta", p.eta}, {"tau", p.tau}};
    j["n_max"] = ss.rho.space().n_max;
    j["moments"] = {{"n1", m.n1}, {"n2", m.n2}, {"n3", m.n3},
                    {"n4", m.n4}, {"d", m.d},   {"q", json_number(m.q)}};
    j["residuals"] = {{"quadratic_relation", json_number(quad)},
                      {"inversion_relation", inv},
                      {"master_equation", ss.residual_norm}};
    j["tail_mass"] = ss.tail_mass;
    j["photon_distribution"] = dist.probs;
    os << j.dump(2) << '\n';
  } else {
    os << "quantity,value\n";
    auto line = [&os](const std::string& k, const std::string& v) { os << k << ',' << v << '\n'; };
    line("omega", format_value(p.omega));
    line("eta", format_value(p.eta));
    line("tau", format_value(p.tau));
    line("n_max", std::to_string(ss.rho.space().n_max));
    line("n1", format_value(m.n1));
    line("n2", format_value(m.n2));
    line("n3", format_value(m.n3));
    line("n4", format_value(m.n4));
    line("d", format_value(m.d));
    line("q", format_value(m.q));
    line("quadratic_relation_residual", format_value(quad));
    line("inversion_relation_residual", format_value(inv));
    line("master_equation_residual", format_value(ss.residual_norm));
    line("tail_mass", format_value(ss.tail_mass));
    for (std::size_t n = 0; n < dist.probs.size(); ++n) {
      line("rho_" + std::to_string(n), format_value(dist.probs[n]));
    }
  }
  emit(os.str(), a.out_file, out);
  return kOk;
}

// ---- sweep ----

struct SweepArgs {
  SweepConfig config;
  std::optional<double> omega, eta;
  bool general = false;
  int jobs = 0;
  std::string out_file;
};

int cmd_sweep(SweepArgs a, std::ostream& out, std::ostream& err) {
  if (a.general) {
    if (!a.omega) throw UsageError("--general requires --omega");
    require_non_negative(a.omega, "--omega");
    require_non_negative(a.eta, "--eta");
    a.config.fixed_omega = a.omega;
    a.config.fixed_eta = a.eta.value_or(0.0);
  } else if (a.omega || a.eta) {
    throw UsageError("--omega/--eta are only accepted together with --general");
  }
  if (a.config.points < 1) throw UsageError("--points must be >= 1");
  if (a.config.tau_min < 0.0 || a.config.tau_max < a.config.tau_min) {
    throw UsageError("--tau-min/--tau-max must satisfy 0 <= min <= max");
  }
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  a.config.workers = a.jobs > 0 ? a.jobs : std::min(hw, 8);

  const SweepResult r = run_sweep(a.config);
  if (!r.failures.empty()) {
    err << "sweep failed at " << r.failures.size() << " grid point(s):\n";
    for (const SweepFailure& f : r.failures) {
      err << "  tau = " << format_value(f.tau) << ": " << f.reason << '\n';
    }
    return kNumericalFailure;
  }
  std::ostringstream os;
  write_sweep_csv(os, r.rows);
  emit(os.str(), a.out_file, out);
  return kOk;
}

// ---- dist ----

struct DistArgs {
  std::string mode = "exact";
  std::optional<double> tau;
  int n_max = 20;
  double tol = 1e-9;
  double series_tol = 1e-16;
  std::string out_file;
};

int cmd_dist(const DistArgs& a, std::ostream& out) {
  std::vector<double> probs;
  if (a.mode == "exact") {
    if (a.tau) throw UsageError("--tau is only used with --mode numeric");
    probs = exact_distribution(a.series_tol).probs;
  } else {
    if (!a.tau) throw UsageError("--mode numeric requires --tau");
    require_non_negative(a.tau, "--tau");
    const SteadyStateResult ss = steady_state(ModelParams::balanced(*a.tau), SpaceConfig(a.n_max), a.tol);
    probs = photon_distribution(ss.rho).probs;
  }
  std::ostringstream os;
  os << "n,rho_n\n";
  for (std::size_t n = 0; n < probs.size(); ++n) os << n << ',' << format_value(probs[n]) << '\n';
  emit(os.str(), a.out_file, out);
  return kOk;
}

// ---- check ----

struct CheckArgs {
  CheckConfig config;
  std::string out_file;
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  if (a.config.grid_size < 1) throw UsageError("--grid-size must be >= 1");
  const std::vector<CheckResult> checks = run_checks(a.config);
  emit(to_json(checks).dump(2) + "\n", a.out_file, out);
  bool ok = true;
  for (const CheckResult& c : checks) {
    if (c.required && !c.pass) {
      err << "verification failed: " << c.check_name << " (value " << c.value << ", threshold "
          << c.threshold << ")\n";
      ok = false;
    }
  }
  return ok ? kOk : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-atom laser steady states, moment relations and figure data", "salaser"};
  app.require_subcommand(1);

  SteadyArgs steady;
  CLI::App* s = app.add_subcommand("steady", "solve one steady state and report its statistics");
  add_rate_flags(*s, steady.rates);
  s->add_option("--nmax", steady.n_max, "Fock truncation (doubled up to 80 if needed)");
  s->add_option("--tol", steady.tol, "max-norm tolerance on the master-equation residual");
  s->add_option("--format", steady.format)->check(CLI::IsMember({"csv", "json"}));
  s->add_option("--out", steady.out_file, "output file (default stdout)");

  SweepArgs sweep;
  CLI::App* w = app.add_subcommand("sweep", "tau sweep at omega = tau, eta = 0 (CSV)");
  w->add_option("--tau-min", sweep.config.tau_min);
  w->add_option("--tau-max", sweep.config.tau_max);
  w->add_option("--points", sweep.config.points);
  w->add_option("--nmax", sweep.config.n_max);
  w->add_option("--tol", sweep.config.tol);
  w->add_option("--jobs", sweep.jobs, "worker threads (default: hardware, max 8)");
  w->add_flag("--general", sweep.general, "hold --omega/--eta fixed instead of omega = tau");
  w->add_option("--omega", sweep.omega);
  w->add_option("--eta", sweep.eta);
  w->add_option("--out", sweep.out_file, "output file (default stdout)");

  DistArgs dist;
  CLI::App* d = app.add_subcommand("dist", "photon distribution rho(n) (CSV)");
  d->add_option("--mode", dist.mode)->check(CLI::IsMember({"exact", "numeric"}));
  d->add_option("--tau", dist.tau, "tau = omega for --mode numeric");
  d->add_option("--nmax", dist.n_max);
  d->add_option("--tol", dist.tol);
  d->add_option("--series-tol", dist.series_tol, "truncation of the exact series");
  d->add_option("--out", dist.out_file);

  CheckArgs check;
  CLI::App* c = app.add_subcommand("check", "run the cross-module verification suite (JSON)");
  c->add_option("--grid-size", check.config.grid_size, "points per axis of the (omega, eta, tau) grid");
  c->add_option("--nmax", check.config.n_max);
  c->add_option("--out", check.out_file);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (s->parsed()) return cmd_steady(steady, out);
    if (w->parsed()) return cmd_sweep(sweep, out, err);
    if (d->parsed()) return cmd_dist(dist, out);
    if (c->parsed()) return cmd_check(check, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace salaser::cli

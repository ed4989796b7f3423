#pragma once

// Command implementations behind the bumproute tool: curve export, route
// simulation, convergence verification and the built-in self test.
//
// Exit codes are a stable contract: 0 success, 1 I/O failure, 2 usage error,
// 3 verification failure.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "bumproute/analytics.hpp"
#include "bumproute/calibration.hpp"
#include "bumproute/errors.hpp"
#include "bumproute/experiments.hpp"
#include "bumproute/format.hpp"
#include "bumproute/plancherel.hpp"
#include "bumproute/rng.hpp"
#include "bumproute/tableau.hpp"
#include "bumproute/worked_example.hpp"

namespace bumproute::cli {

enum ExitCode : int { kSuccess = 0, kIoFailure = 1, kUsage = 2, kVerificationFailure = 3 };

inline constexpr int kSchemaVersion = 1;

enum class Command { Curve, Simulate, Verify, Selftest };
enum class Format { Csv, Json };

inline const char* extension(Format f) { return f == Format::Csv ? "csv" : "json"; }

struct RunConfig {
  Command command = Command::Selftest;
  std::vector<double> alphas;
  std::vector<std::size_t> n_values;
  std::size_t trials = 1;
  std::optional<std::uint64_t> seed;
  std::vector<double> epsilons;
  std::filesystem::path out;
  Format format = Format::Csv;
  std::size_t grid = analytics::kDefaultGridSize;
  unsigned threads = 0;  // 0: hardware concurrency

  // Test hooks for injected-failure checks.
  double beta_scale = 1.0;
  bool flip_omega = false;
  std::size_t selftest_max_lis = 6;
};

inline unsigned effective_threads(const RunConfig& c) {
  if (c.threads > 0) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Returns a usage message when the configuration is unusable for its command.
inline std::optional<std::string> check_config(const RunConfig& c) {
  for (double a : c.alphas)
    if (!(a >= 0.0 && a < 1.0)) return "alpha must lie in [0, 1), got " + format::short_real(a);
  for (auto n : c.n_values)
    if (n < 2) return "n must be at least 2, got " + std::to_string(n);
  if (c.trials < 1) return "trials must be at least 1";
  for (double e : c.epsilons)
    if (!(e > 0.0)) return "epsilon must be positive";
  if (c.grid < 2) return "grid must be at least 2";
  switch (c.command) {
    case Command::Curve:
      if (c.alphas.empty()) return "curve requires --alpha";
      break;
    case Command::Simulate:
      if (c.alphas.empty()) return "simulate requires --alpha";
      if (c.n_values.empty()) return "simulate requires --n";
      break;
    case Command::Verify:
      if (c.alphas.empty()) return "verify requires --alpha";
      if (c.n_values.empty()) return "verify requires --n";
      if (!c.seed) return "verify requires --seed";
      break;
    case Command::Selftest:
      break;
  }
  return std::nullopt;
}

namespace detail {

inline std::filesystem::path out_dir(const RunConfig& c) { return c.out.empty() ? std::filesystem::path(".") : c.out; }

inline std::string alpha_tag(double alpha) { return "alpha_" + format::short_real(alpha); }

inline experiments::ExperimentConfig experiment_config(const RunConfig& c, bool with_exit_points) {
  experiments::ExperimentConfig e;
  e.n_values = c.n_values;
  e.alphas = c.alphas;
  e.trials = c.trials;
  e.epsilons = c.epsilons;
  e.master_seed = c.seed.value_or(0);
  e.threads = effective_threads(c);
  e.with_exit_points = with_exit_points;
  e.beta_scale = c.beta_scale;
  return e;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// curve

inline std::string curve_csv(const analytics::LimitCurve& curve) {
  std::string s = "s,beta,kappa,U,V\n";
  const std::string tail = "," + format::real(curve.kappa) + "," + format::real(curve.endpoint_uv.first) + "," +
                           format::real(curve.endpoint_uv.second) + "\n";
  for (const auto& p : curve.samples) s += format::real(p.s) + "," + format::real(p.beta) + tail;
  return s;
}

inline nlohmann::json curve_json(const analytics::LimitCurve& curve) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& p : curve.samples) samples.push_back({p.s, p.beta});
  return {{"schema_version", kSchemaVersion},
          {"kind", "limit_curve"},
          {"alpha", curve.alpha},
          {"kappa", curve.kappa},
          {"endpoint_uv", {curve.endpoint_uv.first, curve.endpoint_uv.second}},
          {"columns", {"s", "beta"}},
          {"samples", samples}};
}

/// One file per alpha: curve_alpha_<alpha>.<ext> under --out.
inline int cmd_curve(const RunConfig& c, std::ostream& out) {
  const auto dir = detail::out_dir(c);
  format::ensure_directory(dir);
  for (double alpha : c.alphas) {
    const auto curve = analytics::sample_curve(alpha, c.grid);
    const auto path = dir / ("curve_" + detail::alpha_tag(alpha) + "." + extension(c.format));
    format::write_file(path, c.format == Format::Csv ? curve_csv(curve) : curve_json(curve).dump(2) + "\n");
    out << path.string() << "\n";
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// simulate

inline std::string routes_csv(const std::vector<experiments::TrialResult>& trials) {
  std::string s = "trial,seed,m,b,m_scaled,b_scaled\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& t = trials[i];
    const double root = std::sqrt(static_cast<double>(t.n));
    const std::string prefix = std::to_string(i) + "," + std::to_string(t.seed) + ",";
    for (std::size_t m = 1; m <= t.route.length(); ++m) {
      const auto b = t.route.column(m);
      s += prefix + std::to_string(m) + "," + std::to_string(b) + "," + format::real(static_cast<double>(m) / root) +
           "," + format::real(static_cast<double>(b) / root) + "\n";
    }
  }
  return s;
}

inline std::string exits_csv(const std::vector<experiments::TrialResult>& trials) {
  std::string s = "trial,t,column,row,x_scaled,y_scaled,x_limit,y_limit\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& t = trials[i];
    if (!t.exit_points) continue;
    const double root = std::sqrt(static_cast<double>(t.n));
    for (const auto& e : *t.exit_points) {
      const auto lim = analytics::curve_params(t.alpha, e.t);
      s += std::to_string(i) + "," + format::real(e.t) + "," + std::to_string(e.column) + "," + std::to_string(e.row) +
           "," + format::real(static_cast<double>(e.column) / root) + "," +
           format::real(static_cast<double>(e.row) / root) + "," + format::real(lim.x) + "," + format::real(lim.y) +
           "\n";
    }
  }
  return s;
}

inline std::string trials_csv(const std::vector<std::vector<experiments::TrialResult>>& cells) {
  std::string s = "n,alpha,trial,seed,k,route_length_scaled,sup_distance,endpoint_u_scaled,endpoint_v_scaled\n";
  for (const auto& cell : cells)
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const auto& t = cell[i];
      s += std::to_string(t.n) + "," + format::real(t.alpha) + "," + std::to_string(i) + "," +
           std::to_string(t.seed) + "," + std::to_string(t.route.length()) + "," +
           format::real(t.route_length_scaled) + "," + format::real(t.sup_distance) + "," +
           format::real(t.endpoint_uv_scaled.first) + "," + format::real(t.endpoint_uv_scaled.second) + "\n";
    }
  return s;
}

inline nlohmann::json trial_json(const experiments::TrialResult& t, std::size_t index) {
  nlohmann::json j = {{"trial", index},
                      {"seed", t.seed},
                      {"route", t.route.columns()},
                      {"k", t.route.length()},
                      {"route_length_scaled", t.route_length_scaled},
                      {"sup_distance", t.sup_distance},
                      {"endpoint_uv_scaled", {t.endpoint_uv_scaled.first, t.endpoint_uv_scaled.second}}};
  if (t.exit_points) {
    nlohmann::json exits = nlohmann::json::array();
    for (const auto& e : *t.exit_points) exits.push_back({{"t", e.t}, {"column", e.column}, {"row", e.row}});
    j["exit_points"] = exits;
  }
  return j;
}

/// Per (n, alpha): the raw and scaled route of every trial, plus exit points.
/// CSV mode also writes trials.csv with one summary row per trial.
inline int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const auto dir = detail::out_dir(c);
  format::ensure_directory(dir);
  const auto config = detail::experiment_config(c, true);
  const auto grid = experiments::run_trials(config);

  std::vector<std::vector<experiments::TrialResult>> cells;
  for (std::size_t ni = 0; ni < grid.size(); ++ni) {
    for (std::size_t ai = 0; ai < grid[ni].size(); ++ai) {
      const auto& trials = grid[ni][ai];
      cells.push_back(trials);
      const std::string stem = "n_" + std::to_string(c.n_values[ni]) + "_" + detail::alpha_tag(c.alphas[ai]);
      if (c.format == Format::Csv) {
        const auto routes = dir / ("routes_" + stem + ".csv");
        const auto exits = dir / ("exits_" + stem + ".csv");
        format::write_file(routes, routes_csv(trials));
        format::write_file(exits, exits_csv(trials));
        out << routes.string() << "\n" << exits.string() << "\n";
      } else {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t i = 0; i < trials.size(); ++i) arr.push_back(trial_json(trials[i], i));
        nlohmann::json j = {{"schema_version", kSchemaVersion}, {"kind", "bumping_routes"},
                            {"n", c.n_values[ni]},           {"alpha", c.alphas[ai]},
                            {"master_seed", config.master_seed}, {"trials", arr}};
        const auto path = dir / ("routes_" + stem + ".json");
        format::write_file(path, j.dump(2) + "\n");
        out << path.string() << "\n";
      }
    }
  }
  if (c.format == Format::Csv) {
    const auto path = dir / "trials.csv";
    format::write_file(path, trials_csv(cells));
    out << path.string() << "\n";
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  std::string name;
  std::size_t n;
  double alpha;
  double value;
  double threshold;
  bool passed;
};

/// Calibrated threshold checks for every cell of a report.
inline std::vector<CheckResult> evaluate_checks(const experiments::ConvergenceReport& report) {
  std::vector<CheckResult> checks;
  for (const auto& cell : report.cells) {
    const double tau = calibration::sup_threshold(cell.n, cell.alpha);
    checks.push_back({"median_sup_distance", cell.n, cell.alpha, cell.sup_distance.median, tau,
                      cell.sup_distance.median <= tau});
    const double tk = calibration::kappa_threshold(cell.n, cell.alpha);
    checks.push_back({"mean_kappa_deviation", cell.n, cell.alpha, cell.mean_kappa_deviation, tk,
                      cell.mean_kappa_deviation <= tk});
  }
  return checks;
}

inline std::string check_label(const CheckResult& r) {
  return r.name + "[n=" + std::to_string(r.n) + ",alpha=" + format::short_real(r.alpha) + "]";
}

inline nlohmann::json report_json(const experiments::ConvergenceReport& report, const std::vector<CheckResult>& checks) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json probs = nlohmann::json::array();
    for (const auto& p : c.probabilities)
      probs.push_back({{"epsilon", p.epsilon}, {"p_sup_exceeds", p.p_sup_exceeds}, {"p_kappa_exceeds", p.p_kappa_exceeds}});
    nlohmann::json cell_checks = nlohmann::json::array();
    for (const auto& r : checks)
      if (r.n == c.n && r.alpha == c.alpha)
        cell_checks.push_back({{"name", r.name}, {"value", r.value}, {"threshold", r.threshold}, {"passed", r.passed}});
    const auto& s = c.sup_distance;
    cells.push_back({{"n", c.n},
                     {"alpha", c.alpha},
                     {"trials", c.trials},
                     {"kappa", c.kappa},
                     {"endpoint_uv", {c.endpoint_uv.first, c.endpoint_uv.second}},
                     {"sup_distance",
                      {{"mean", s.mean}, {"min", s.min}, {"q10", s.q10}, {"q25", s.q25}, {"median", s.median},
                       {"q75", s.q75}, {"q90", s.q90}, {"max", s.max}}},
                     {"mean_route_length_scaled", c.mean_route_length_scaled},
                     {"mean_kappa_deviation", c.mean_kappa_deviation},
                     {"mean_endpoint_uv_scaled", {c.mean_endpoint_uv_scaled.first, c.mean_endpoint_uv_scaled.second}},
                     {"endpoint_error", c.endpoint_error},
                     {"probabilities", probs},
                     {"checks", cell_checks}});
  }
  const bool passed = std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.passed; });
  return {{"schema_version", kSchemaVersion}, {"kind", "convergence_report"}, {"master_seed", report.master_seed},
          {"trials", report.trials},          {"epsilons", report.epsilons},  {"cells", cells},
          {"passed", passed}};
}

inline std::string report_csv(const experiments::ConvergenceReport& report, const std::vector<CheckResult>& checks) {
  std::string s =
      "n,alpha,trials,master_seed,kappa,U,V,sup_mean,sup_min,sup_q10,sup_q25,sup_median,sup_q75,sup_q90,sup_max,"
      "mean_route_length_scaled,mean_kappa_deviation,mean_endpoint_u_scaled,mean_endpoint_v_scaled,endpoint_error,"
      "tau_sup,tau_kappa,passed";
  for (double e : report.epsilons) s += ",p_sup_gt_" + format::short_real(e) + ",p_kappa_gt_" + format::short_real(e);
  s += "\n";
  for (const auto& c : report.cells) {
    double tau_sup = 0.0;
    double tau_kappa = 0.0;
    bool passed = true;
    for (const auto& r : checks) {
      if (r.n != c.n || r.alpha != c.alpha) continue;
      (r.name == "median_sup_distance" ? tau_sup : tau_kappa) = r.threshold;
      passed = passed && r.passed;
    }
    const auto& q = c.sup_distance;
    const double row[] = {c.kappa, c.endpoint_uv.first, c.endpoint_uv.second, q.mean, q.min, q.q10, q.q25, q.median,
                          q.q75, q.q90, q.max, c.mean_route_length_scaled, c.mean_kappa_deviation,
                          c.mean_endpoint_uv_scaled.first, c.mean_endpoint_uv_scaled.second, c.endpoint_error,
                          tau_sup, tau_kappa};
    s += std::to_string(c.n) + "," + format::real(c.alpha) + "," + std::to_string(c.trials) + "," +
         std::to_string(report.master_seed);
    for (double v : row) s += "," + format::real(v);
    s += passed ? ",1" : ",0";
    for (const auto& p : c.probabilities) s += "," + format::real(p.p_sup_exceeds) + "," + format::real(p.p_kappa_exceeds);
    s += "\n";
  }
  return s;
}

/// Runs the convergence report, writes it to --out (default
/// convergence_report.<ext>) and returns 3 if any calibrated check fails.
inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto config = detail::experiment_config(c, false);
  const auto report = experiments::convergence_report(config);
  const auto checks = evaluate_checks(report);
  const auto path = c.out.empty() ? std::filesystem::path(std::string("convergence_report.") + extension(c.format)) : c.out;
  format::write_file(path, c.format == Format::Csv ? report_csv(report, checks) : report_json(report, checks).dump(2) + "\n");
  out << path.string() << "\n";

  bool ok = true;
  for (const auto& r : checks) {
    if (r.passed) continue;
    ok = false;
    err << "verification failed: " << check_label(r) << " = " << format::real(r.value) << " exceeds "
        << format::real(r.threshold) << "\n";
  }
  return ok ? kSuccess : kVerificationFailure;
}

// ---------------------------------------------------------------------------
// selftest

namespace selftest {

inline bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// Longest increasing subsequence by enumerating all index subsets.
inline std::size_t brute_force_lis(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double last = -1e300;
    std::size_t len = 0;
    bool increasing = true;
    for (std::size_t i = 0; i < n && increasing; ++i) {
      if (!(mask & (1u << i))) continue;
      increasing = xs[i] > last;
      last = xs[i];
      ++len;
    }
    if (increasing) best = std::max(best, len);
  }
  return best;
}

struct Property {
  std::string name;
  std::function<bool()> holds;
};

inline std::vector<Property> properties(const RunConfig& c) {
  using namespace analytics;
  const std::function<double(double)> om =
      c.flip_omega ? std::function<double(double)>([](double u) { return -omega(u); })
                   : std::function<double(double)>([](double u) { return omega(u); });
  const std::size_t max_lis = c.selftest_max_lis;
  const double eps = 1e-12;

  std::vector<Property> props;
  props.push_back({"omega_identities", [om, eps] {
                     return near(om(0.0), 4.0 / kPi, eps) && near(om(2.0), 2.0, eps) && near(om(-2.0), 2.0, eps) &&
                            near(om(1.0), 2.0 / kPi * (kPi / 6.0 + std::sqrt(3.0)), eps);
                   }});
  props.push_back({"semicircle_cdf_identities", [eps] {
                     return near(semicircle_cdf(0.0), 0.5, eps) && semicircle_cdf(-2.0) == 0.0 &&
                            semicircle_cdf(2.0) == 1.0;
                   }});
  props.push_back({"quantile_roundtrip", [] {
                     for (int i = 0; i <= 1000; ++i) {
                       const double p = i / 1000.0;
                       if (!near(semicircle_cdf(semicircle_quantile(p)), p, 1e-10)) return false;
                     }
                     return true;
                   }});
  props.push_back({"kappa_identities", [om, eps] {
                     auto k = [&om](double a) {
                       const double q = semicircle_quantile(a);
                       return 0.5 * (om(q) - q);
                     };
                     return near(k(0.0), 2.0, eps) && near(k(1.0), 0.0, eps) && near(k(0.5), 2.0 / kPi, eps) &&
                            near(k(0.3), kappa(0.3), eps);
                   }});
  props.push_back({"scaled_limit_shape", [om] {
                     for (double t : {0.25, 0.5, 0.9, 1.0})
                       for (double a : {0.0, 0.1, 0.2, 0.25}) {
                         const auto p = curve_params(a, t);
                         if (!near(p.v, std::sqrt(t) * om(p.u / std::sqrt(t)), 1e-12)) return false;
                       }
                     return true;
                   }});
  props.push_back({"beta_identities", [eps] {
                     for (double a : {0.1, 0.3, 0.5, 0.7, 0.9})
                       if (!near(beta(a, 0.0), 2.0 * std::sqrt(a), eps)) return false;
                     for (double s : {0.0, 0.5, 1.0, 2.0})
                       if (beta(0.0, s) != 0.0) return false;
                     return true;
                   }});
  props.push_back({"worked_example_insertion", [] {
                     auto t = IncreasingTableau::from_rows(worked_example::before_rows());
                     const auto route = t.insert(worked_example::kInserted);
                     return route.columns() == worked_example::route_columns() &&
                            t.rows() == worked_example::after_rows();
                   }});
  props.push_back({"lis_oracle", [max_lis] {
                     for (std::size_t n = 1; n <= max_lis; ++n) {
                       std::vector<double> perm(n);
                       std::iota(perm.begin(), perm.end(), 1.0);
                       do {
                         const auto p = insertion_tableau(perm);
                         if (p.row_length(1) != brute_force_lis(perm)) return false;
                       } while (std::next_permutation(perm.begin(), perm.end()));
                     }
                     return true;
                   }});
  props.push_back({"route_monotonicity", [] {
                     SeededRng rng(12345);
                     for (int trial = 0; trial < 50; ++trial) {
                       const auto t = plancherel::sample_uniform_tableau(200, rng);
                       BumpingRoute prev = t.route_for(1e-9);
                       for (double z = 0.05; z < 1.0; z += 0.05) {
                         const auto r = t.route_for(z);
                         if (!r.is_nonincreasing() || !deformed_rightward(prev, r)) return false;
                         prev = r;
                       }
                     }
                     return true;
                   }});
  return props;
}

}  // namespace selftest

/// Fast invariant suite. Prints one line per property; 3 on any failure.
inline int cmd_selftest(const RunConfig& c, std::ostream& out, std::ostream& err) {
  bool ok = true;
  for (const auto& p : selftest::properties(c)) {
    bool holds = false;
    try {
      holds = p.holds();
    } catch (const std::exception& e) {
      err << p.name << ": " << e.what() << "\n";
    }
    out << (holds ? "[ok]   " : "[FAIL] ") << p.name << "\n";
    if (!holds) {
      err << "selftest failed: " << p.name << "\n";
      ok = false;
    }
  }
  return ok ? kSuccess : kVerificationFailure;
}

/// Validates the configuration and dispatches to the command.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (auto problem = check_config(c)) {
    err << "usage error: " << *problem << "\n";
    return kUsage;
  }
  try {
    switch (c.command) {
      case Command::Curve: return cmd_curve(c, out);
      case Command::Simulate: return cmd_simulate(c, out);
      case Command::Verify: return cmd_verify(c, out, err);
      case Command::Selftest: return cmd_selftest(c, out, err);
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace bumproute::cli

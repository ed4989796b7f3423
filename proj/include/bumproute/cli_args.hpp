#pragma once

// Command-line parsing for the bumproute tool.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "bumproute/cli.hpp"

namespace bumproute::cli {

/// Parses argv into a RunConfig, or returns the exit code to terminate with
/// (0 after --help, 2 on a usage error).
inline std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                                       std::ostream& err) {
  CLI::App app{"Bumping routes of Robinson-Schensted insertion: limit curves and Monte Carlo checks", "bumproute"};
  app.require_subcommand(1);

  RunConfig c;
  std::string format = "csv";
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--alpha", c.alphas, "Inserted value(s) in [0,1); repeatable or comma list")->delimiter(',');
    sub->add_option("--out", c.out, "Output directory (curve, simulate) or report file (verify)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--n", c.n_values, "Insertion index n; T_{n-1} has n-1 boxes; repeatable or comma list")
        ->delimiter(',');
    sub->add_option("--trials", c.trials, "Trials per (n, alpha)");
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores); never changes results");
    sub->add_option("--test-beta-scale", c.beta_scale, "Test hook: scale the reference curve")->group("");
  };

  auto* curve = app.add_subcommand("curve", "Export limiting curves beta_alpha");
  add_common(curve);
  curve->add_option("--grid", c.grid, "Grid points in s");

  auto* simulate = app.add_subcommand("simulate", "Simulate bumping routes and export them");
  add_common(simulate);
  add_sim(simulate);

  auto* verify = app.add_subcommand("verify", "Run the convergence report and check calibrated thresholds");
  add_common(verify);
  add_sim(verify);
  verify->add_option("--epsilon", c.epsilons, "Tolerance(s) for exceedance probabilities")->delimiter(',');

  auto* selftest = app.add_subcommand("selftest", "Run the fast invariant suite");
  selftest->add_flag("--test-flip-omega", c.flip_omega, "Test hook: negate the limit shape")->group("");
  selftest->add_option("--max-lis", c.selftest_max_lis, "Largest permutation size for the LIS oracle")
      ->check(CLI::Range(1, 9));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  if (curve->parsed()) c.command = Command::Curve;
  if (simulate->parsed()) c.command = Command::Simulate;
  if (verify->parsed()) c.command = Command::Verify;
  if (selftest->parsed()) c.command = Command::Selftest;
  c.format = format == "json" ? Format::Json : Format::Csv;

  // verify insists on an explicit seed; simulate defaults to 0.
  const CLI::App* sub = simulate->parsed() ? simulate : verify->parsed() ? verify : nullptr;
  if (sub && sub->count("--seed") > 0) c.seed = seed;
  if (simulate->parsed() && !c.seed) c.seed = 0;
  if (verify->parsed() && c.epsilons.empty()) c.epsilons = {0.1};
  return c;
}

}  // namespace bumproute::cli

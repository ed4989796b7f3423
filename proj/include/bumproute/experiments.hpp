#pragma once

// Monte Carlo harness comparing scaled empirical bumping routes with the
// limiting curves beta_alpha.
//
// Every trial owns an RNG stream derived from (master seed, n, trial index)
// and a freshly sampled T_{n-1}. All alphas of a trial are evaluated against
// that same tableau, so routes for different alphas are coupled. Results are
// written to fixed slots and aggregated in trial order; the thread count
// never changes the output.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bumproute/analytics.hpp"
#include "bumproute/errors.hpp"
#include "bumproute/plancherel.hpp"
#include "bumproute/rng.hpp"
#include "bumproute/tableau.hpp"

namespace bumproute::experiments {

inline constexpr std::size_t kDefaultExitGridPoints = 64;
inline constexpr std::size_t kMaxOrder = 10'000'000;
// Upper bound on n * trials summed over the cells of one report.
inline constexpr double kMaxWork = 5e9;

/// Phi_{n,alpha}(t): first route position outside the t-sublevel tableau.
struct ExitPoint {
  double t;
  std::size_t column;
  std::size_t row;

  friend bool operator==(const ExitPoint&, const ExitPoint&) = default;
};

struct TrialResult {
  std::size_t n = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  BumpingRoute route;
  double route_length_scaled = 0.0;  // k / sqrt(n)
  double sup_distance = 0.0;
  std::pair<double, double> endpoint_uv_scaled{0.0, 0.0};
  std::optional<std::vector<ExitPoint>> exit_points;

  /// |k/sqrt(n) - kappa(alpha)|
  double kappa_deviation() const { return std::fabs(route_length_scaled - analytics::kappa(alpha)); }
};

/// ((b(k) - k) / sqrt(n), (b(k) + k) / sqrt(n))
inline std::pair<double, double> scaled_endpoint(const BumpingRoute& route, std::size_t n) {
  const auto [col, row] = route.last_box();
  const double root = std::sqrt(static_cast<double>(n));
  return {(static_cast<double>(col) - static_cast<double>(row)) / root,
          (static_cast<double>(col) + static_cast<double>(row)) / root};
}

/// max over 1 <= m <= k of |b(m)/root - reference(m)|
template <typename Reference>
double sup_over_route(const BumpingRoute& route, double root, Reference&& reference) {
  double sup = 0.0;
  for (std::size_t m = 1; m <= route.length(); ++m)
    sup = std::max(sup, std::fabs(static_cast<double>(route.column(m)) / root - reference(m)));
  return sup;
}

/// Reference values beta_alpha(min(m / sqrt(n), kappa)) for one (n, alpha),
/// cached for every m at which the clamp is not yet active.
class RouteReference {
 public:
  RouteReference(std::size_t n, double alpha, double beta_scale = 1.0)
      : n_(n), alpha_(alpha), root_(std::sqrt(static_cast<double>(n))), kappa_(analytics::kappa(alpha)) {
    if (n == 0) throw DomainError("RouteReference: n must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("RouteReference: alpha outside [0, 1)");
    // m / sqrt(n) < kappa for m < kappa * sqrt(n); beyond that the value is beta(kappa).
    const auto unclamped = static_cast<std::size_t>(std::ceil(kappa_ * root_));
    values_.reserve(unclamped + 1);
    for (std::size_t m = 1; m <= unclamped; ++m) values_.push_back(beta_scale * analytics::beta(alpha, scaled_height(m)));
    tail_ = beta_scale * analytics::beta(alpha, kappa_);
  }

  std::size_t n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double kappa() const noexcept { return kappa_; }

  /// m / sqrt(n) clamped to kappa.
  double scaled_height(std::size_t m) const noexcept { return std::min(static_cast<double>(m) / root_, kappa_); }

  double at(std::size_t m) const noexcept { return m <= values_.size() ? values_[m - 1] : tail_; }

  /// max over 1 <= m <= k of |b(m)/sqrt(n) - beta(min(m/sqrt(n), kappa))|
  double sup_distance(const BumpingRoute& route) const {
    return sup_over_route(route, root_, [this](std::size_t m) { return at(m); });
  }

 private:
  std::size_t n_;
  double alpha_;
  double root_;
  double kappa_;
  std::vector<double> values_;
  double tail_ = 0.0;
};

/// Sup-distance between a route and the limiting curve for the same alpha.
/// beta is evaluated directly at every m/sqrt(n); the tabulated curve fixes
/// alpha and kappa.
inline double route_sup_distance(const BumpingRoute& route, double alpha, std::size_t n,
                                 const analytics::LimitCurve& curve) {
  if (curve.alpha != alpha) throw DomainError("route_sup_distance: curve was sampled for a different alpha");
  if (n == 0) throw DomainError("route_sup_distance: n must be positive");
  const double root = std::sqrt(static_cast<double>(n));
  return sup_over_route(route, root, [&](std::size_t m) {
    return analytics::beta(alpha, std::min(static_cast<double>(m) / root, curve.kappa));
  });
}

inline std::vector<double> default_t_grid(double alpha, std::size_t points = kDefaultExitGridPoints) {
  std::vector<double> grid;
  if (points == 0) return grid;
  if (points == 1) return {1.0};
  grid.reserve(points);
  for (std::size_t i = 0; i < points; ++i)
    grid.push_back(i + 1 == points ? 1.0 : alpha + (1.0 - alpha) * static_cast<double>(i) / static_cast<double>(points - 1));
  return grid;
}

/// Phi_{n,alpha}(t) for each t: the first route position (b(m), m) that lies
/// outside the t-sublevel tableau. The entries the route displaces increase
/// with m, so this is a binary search along the route.
inline std::vector<ExitPoint> exit_points(const IncreasingTableau& tableau, const BumpingRoute& route, double alpha,
                                          std::span<const double> t_grid) {
  if (route.length() == 0) throw InvariantViolation("exit_points: empty route");
  std::vector<ExitPoint> out;
  out.reserve(t_grid.size());
  auto inside = [&](std::size_t m, double t) {
    const std::size_t col = route.column(m);
    return col <= tableau.row_length(m) && tableau.at(col, m) <= t;
  };
  for (double t : t_grid) {
    if (!(t >= alpha && t <= 1.0)) throw DomainError("exit_points: t outside [alpha, 1]");
    std::size_t lo = 1;
    std::size_t hi = route.length();  // the last box is never inside
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (inside(mid, t))
        lo = mid + 1;
      else
        hi = mid;
    }
    out.push_back({t, route.column(lo), lo});
  }
  return out;
}

/// All TrialResult statistics for inserting alpha into a given T_{n-1}.
inline TrialResult evaluate_trial(const IncreasingTableau& tableau, std::size_t n, double alpha, std::uint64_t seed,
                                  const RouteReference& reference, bool with_exit_points = false) {
  if (reference.n() != n || reference.alpha() != alpha)
    throw DomainError("evaluate_trial: reference built for a different (n, alpha)");
  TrialResult r;
  r.n = n;
  r.alpha = alpha;
  r.seed = seed;
  r.route = tableau.route_for(alpha);
  r.route_length_scaled = static_cast<double>(r.route.length()) / std::sqrt(static_cast<double>(n));
  r.sup_distance = reference.sup_distance(r.route);
  r.endpoint_uv_scaled = scaled_endpoint(r.route, n);
  if (with_exit_points) {
    const auto grid = default_t_grid(alpha);
    r.exit_points = exit_points(tableau, r.route, alpha, grid);
  }
  return r;
}

/// Builds T_{n-1} from n-1 uniforms drawn from `rng` and inserts alpha.
inline TrialResult run_trial(std::size_t n, double alpha, SeededRng& rng, bool with_exit_points = false) {
  if (n < 2) throw DomainError("run_trial: n must be at least 2");
  if (n > kMaxOrder) throw ResourceLimitError("run_trial: n exceeds the supported maximum");
  const RouteReference reference(n, alpha);
  const auto tableau = plancherel::sample_uniform_tableau(n - 1, rng);
  return evaluate_trial(tableau, n, alpha, rng.seed(), reference, with_exit_points);
}

inline std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n, std::size_t trial) {
  return derive_seed(master_seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
}

/// Runs fn(i) for i in [0, count) on up to `threads` threads. The first
/// exception thrown by any task is rethrown after all threads finish.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

struct ExperimentConfig {
  std::vector<std::size_t> n_values;
  std::vector<double> alphas;
  std::size_t trials = 1;
  std::vector<double> epsilons;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  bool with_exit_points = false;
  // Test hook: multiplies the reference curve (1.0 in normal operation).
  double beta_scale = 1.0;
};

inline void check_config(const ExperimentConfig& c) {
  if (c.n_values.empty()) throw DomainError("at least one n is required");
  if (c.alphas.empty()) throw DomainError("at least one alpha is required");
  if (c.trials < 1) throw DomainError("trials must be at least 1");
  double work = 0.0;
  for (auto n : c.n_values) {
    if (n < 2) throw DomainError("n must be at least 2");
    if (n > kMaxOrder) throw ResourceLimitError("n = " + std::to_string(n) + " exceeds the limit of " + std::to_string(kMaxOrder));
    work += static_cast<double>(n) * static_cast<double>(c.trials);
  }
  if (work > kMaxWork) throw ResourceLimitError("requested n * trials exceeds the work limit");
  for (double a : c.alphas)
    if (!(a >= 0.0 && a < 1.0)) throw DomainError("alpha outside [0, 1)");
  for (double e : c.epsilons)
    if (!(e > 0.0)) throw DomainError("epsilon must be positive");
}

/// Trial results indexed [n index][alpha index][trial].
using TrialGrid = std::vector<std::vector<std::vector<TrialResult>>>;

inline TrialGrid run_trials(const ExperimentConfig& config) {
  check_config(config);
  const std::size_t nn = config.n_values.size();
  const std::size_t na = config.alphas.size();

  std::vector<std::vector<RouteReference>> refs(nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (double a : config.alphas) refs[i].emplace_back(config.n_values[i], a, config.beta_scale);

  TrialGrid grid(nn, std::vector<std::vector<TrialResult>>(na, std::vector<TrialResult>(config.trials)));
  parallel_for(nn * config.trials, config.threads, [&](std::size_t task) {
    const std::size_t ni = task / config.trials;
    const std::size_t trial = task % config.trials;
    const std::size_t n = config.n_values[ni];
    const std::uint64_t seed = trial_seed(config.master_seed, n, trial);
    SeededRng rng(seed);
    const auto tableau = plancherel::sample_uniform_tableau(n - 1, rng);
    for (std::size_t ai = 0; ai < na; ++ai)
      grid[ni][ai][trial] = evaluate_trial(tableau, n, config.alphas[ai], seed, refs[ni][ai], config.with_exit_points);
  });
  return grid;
}

/// Linear-interpolation quantile (Hyndman-Fan type 7) of sorted data.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct Summary {
  double mean = 0.0;
  double min = 0.0;
  double q10 = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double q90 = 0.0;
  double max = 0.0;
};

inline Summary summarize(std::vector<double> values) {
  Summary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.q10 = quantile_sorted(values, 0.10);
  s.q25 = quantile_sorted(values, 0.25);
  s.median = quantile_sorted(values, 0.50);
  s.q75 = quantile_sorted(values, 0.75);
  s.q90 = quantile_sorted(values, 0.90);
  return s;
}

struct EpsilonProbabilities {
  double epsilon;
  double p_sup_exceeds;    // P(sup_distance > eps)
  double p_kappa_exceeds;  // P(|k/sqrt(n) - kappa| > eps)
};

struct CellReport {
  std::size_t n = 0;
  double alpha = 0.0;
  std::size_t trials = 0;
  double kappa = 0.0;
  std::pair<double, double> endpoint_uv{0.0, 0.0};
  Summary sup_distance;
  double mean_route_length_scaled = 0.0;
  double mean_kappa_deviation = 0.0;
  std::pair<double, double> mean_endpoint_uv_scaled{0.0, 0.0};
  double endpoint_error = 0.0;  // Euclidean distance of the mean endpoint to (U, V)
  std::vector<EpsilonProbabilities> probabilities;
};

struct ConvergenceReport {
  std::uint64_t master_seed = 0;
  std::size_t trials = 0;
  std::vector<double> epsilons;
  std::vector<CellReport> cells;  // ordered by n, then alpha

  const CellReport* find(std::size_t n, double alpha) const {
    for (const auto& c : cells)
      if (c.n == n && c.alpha == alpha) return &c;
    return nullptr;
  }
};

/// Aggregates the trials of one (n, alpha) cell, in trial order.
inline CellReport aggregate_cell(std::span<const TrialResult> trials, std::span<const double> epsilons) {
  if (trials.empty()) throw DomainError("aggregate_cell: no trials");
  CellReport c;
  c.n = trials.front().n;
  c.alpha = trials.front().alpha;
  c.trials = trials.size();
  c.kappa = analytics::kappa(c.alpha);
  c.endpoint_uv = analytics::endpoint(c.alpha);

  std::vector<double> sups;
  sups.reserve(trials.size());
  double len = 0.0;
  double dev = 0.0;
  double eu = 0.0;
  double ev = 0.0;
  for (const auto& t : trials) {
    sups.push_back(t.sup_distance);
    len += t.route_length_scaled;
    dev += std::fabs(t.route_length_scaled - c.kappa);
    eu += t.endpoint_uv_scaled.first;
    ev += t.endpoint_uv_scaled.second;
  }
  const double count = static_cast<double>(trials.size());
  c.sup_distance = summarize(sups);
  c.mean_route_length_scaled = len / count;
  c.mean_kappa_deviation = dev / count;
  c.mean_endpoint_uv_scaled = {eu / count, ev / count};
  c.endpoint_error = std::hypot(c.mean_endpoint_uv_scaled.first - c.endpoint_uv.first,
                                c.mean_endpoint_uv_scaled.second - c.endpoint_uv.second);
  for (double eps : epsilons) {
    std::size_t sup_hits = 0;
    std::size_t kappa_hits = 0;
    for (const auto& t : trials) {
      sup_hits += t.sup_distance > eps;
      kappa_hits += std::fabs(t.route_length_scaled - c.kappa) > eps;
    }
    c.probabilities.push_back({eps, static_cast<double>(sup_hits) / count, static_cast<double>(kappa_hits) / count});
  }
  return c;
}

inline ConvergenceReport aggregate(const ExperimentConfig& config, const TrialGrid& grid) {
  ConvergenceReport report;
  report.master_seed = config.master_seed;
  report.trials = config.trials;
  report.epsilons = config.epsilons;
  for (const auto& per_n : grid)
    for (const auto& per_alpha : per_n) report.cells.push_back(aggregate_cell(per_alpha, config.epsilons));
  return report;
}

inline ConvergenceReport convergence_report(const ExperimentConfig& config) {
  return aggregate(config, run_trials(config));
}

}  // namespace bumproute::experiments

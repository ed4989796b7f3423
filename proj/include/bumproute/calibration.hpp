#pragma once

// Frozen pilot statistics and the acceptance thresholds derived from them.
//
// The limit theorem gives convergence in probability with no rate, so the
// thresholds are empirical. Pilot run: master seed 0, 100 trials per cell,
// n in {1e3, 1e4, 1e5}, alpha in {0.1, ..., 0.9}, evaluated with
// experiments::convergence_report (all alphas share each trial's tableau).
// Values are rounded to 6 decimals. A threshold is twice the pilot value.
//
// Between calibrated points: piecewise power law in n (linear in log-log),
// extrapolated with the slope of the nearest segment, and piecewise linear
// in alpha, held constant outside [0.1, 0.9].

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace bumproute::calibration {

inline constexpr std::uint64_t kPilotSeed = 0;
inline constexpr std::size_t kPilotTrials = 100;
inline constexpr double kSlack = 2.0;

inline constexpr std::array<double, 3> kPilotN{1e3, 1e4, 1e5};
inline constexpr std::array<double, 9> kPilotAlpha{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

// Median of sup_distance per (n, alpha).
inline constexpr std::array<std::array<double, 9>, 3> kPilotMedianSup{{
    {0.098871, 0.113491, 0.116234, 0.130196, 0.141147, 0.138214, 0.142022, 0.138620, 0.138498},
    {0.054524, 0.063277, 0.066008, 0.069350, 0.072097, 0.074039, 0.074885, 0.072073, 0.070911},
    {0.029102, 0.033570, 0.034148, 0.035775, 0.038060, 0.040074, 0.033538, 0.035046, 0.035248},
}};

// Mean of |k / sqrt(n) - kappa(alpha)| per (n, alpha).
inline constexpr std::array<std::array<double, 9>, 3> kPilotMeanKappaDeviation{{
    {0.141354, 0.130176, 0.107488, 0.118138, 0.115340, 0.091639, 0.074984, 0.069427, 0.048369},
    {0.077218, 0.065926, 0.070639, 0.064262, 0.058835, 0.052145, 0.047900, 0.036631, 0.025920},
    {0.038543, 0.040127, 0.035011, 0.029193, 0.033656, 0.029670, 0.020656, 0.018900, 0.013644},
}};

// Fixed tolerances for the alpha = 1/2, n = 1e5 acceptance checks.
inline constexpr double kKappaMeanTolerance = 0.05;
inline constexpr double kEndpointTolerance = 0.05;

namespace detail {

inline double along_alpha(const std::array<double, 9>& row, double alpha) {
  if (alpha <= kPilotAlpha.front()) return row.front();
  if (alpha >= kPilotAlpha.back()) return row.back();
  std::size_t i = 0;
  while (kPilotAlpha[i + 1] < alpha) ++i;
  const double w = (alpha - kPilotAlpha[i]) / (kPilotAlpha[i + 1] - kPilotAlpha[i]);
  return row[i] + w * (row[i + 1] - row[i]);
}

inline double interpolate(const std::array<std::array<double, 9>, 3>& table, double n, double alpha) {
  std::array<double, 3> at_n{};
  for (std::size_t i = 0; i < 3; ++i) at_n[i] = std::log(along_alpha(table[i], alpha));
  const double x = std::log(n);
  std::size_t seg = x <= std::log(kPilotN[1]) ? 0 : 1;
  const double x0 = std::log(kPilotN[seg]);
  const double x1 = std::log(kPilotN[seg + 1]);
  const double w = (x - x0) / (x1 - x0);
  return std::exp(at_n[seg] + w * (at_n[seg + 1] - at_n[seg]));
}

}  // namespace detail

/// Pilot median sup_distance, interpolated to (n, alpha).
inline double pilot_median_sup(std::size_t n, double alpha) {
  return detail::interpolate(kPilotMedianSup, static_cast<double>(n), alpha);
}

inline double pilot_mean_kappa_deviation(std::size_t n, double alpha) {
  return detail::interpolate(kPilotMeanKappaDeviation, static_cast<double>(n), alpha);
}

/// tau(n, alpha): bound on the median sup_distance.
inline double sup_threshold(std::size_t n, double alpha) { return kSlack * pilot_median_sup(n, alpha); }

/// Bound on the mean |k / sqrt(n) - kappa(alpha)|.
inline double kappa_threshold(std::size_t n, double alpha) { return kSlack * pilot_mean_kappa_deviation(n, alpha); }

}  // namespace bumproute::calibration

#pragma once

// Test-only oracles, written independently of the library code they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

// Longest increasing subsequence by enumerating every subset of positions.
inline std::size_t lis_by_subsets(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<double> picked;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) picked.push_back(xs[i]);
    if (std::adjacent_find(picked.begin(), picked.end(), [](double a, double b) { return a >= b; }) == picked.end())
      best = std::max(best, picked.size());
  }
  return best;
}

inline void partitions_rec(std::size_t remaining, std::size_t max_part, std::vector<std::size_t>& cur,
                           std::vector<std::vector<std::size_t>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

// Number of standard Young tableaux of shape lambda, by the hook-length formula.
inline double dimension(const std::vector<std::size_t>& lambda) {
  std::size_t n = 0;
  for (auto p : lambda) n += p;
  double result = 1.0;
  for (std::size_t k = 2; k <= n; ++k) result *= static_cast<double>(k);
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = 0; j < lambda[i]; ++j) {
      std::size_t leg = 0;
      for (std::size_t r = i + 1; r < lambda.size() && lambda[r] > j; ++r) ++leg;
      result /= static_cast<double>(lambda[i] - j - 1 + leg + 1);
    }
  return result;
}

// Plancherel probabilities dim(lambda)^2 / n!.
inline std::map<std::vector<std::size_t>, double> plancherel_weights(std::size_t n) {
  double fact = 1.0;
  for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<double>(k);
  std::map<std::vector<std::size_t>, double> w;
  for (const auto& lambda : partitions(n)) {
    const double d = dimension(lambda);
    w[lambda] = d * d / fact;
  }
  return w;
}

// Closed forms, evaluated without the library.
inline double omega(double u) {
  if (std::fabs(u) >= 2.0) return std::fabs(u);
  return 2.0 / std::numbers::pi * (u * std::asin(u / 2.0) + std::sqrt(4.0 - u * u));
}

inline double cdf(double u) {
  if (u <= -2.0) return 0.0;
  if (u >= 2.0) return 1.0;
  return 0.5 + (u * std::sqrt(4.0 - u * u) / 4.0 + std::asin(u / 2.0)) / std::numbers::pi;
}

// Plain bisection on cdf, run to machine resolution.
inline double quantile(double p) {
  double lo = -2.0;
  double hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// (x_alpha(t), y_alpha(t))
inline std::pair<double, double> route_point(double alpha, double t) {
  const double q = quantile(alpha / t);
  const double u = std::sqrt(t) * q;
  const double v = std::sqrt(t) * omega(q);
  return {(v + u) / 2.0, (v - u) / 2.0};
}

// beta_alpha(s) by bisection on the parametric curve.
inline double beta(double alpha, double s) {
  if (alpha == 0.0) return 0.0;
  double lo = alpha;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (route_point(alpha, mid).second < s ? lo : hi) = mid;
  }
  return route_point(alpha, 0.5 * (lo + hi)).first;
}

}  // namespace oracle

#pragma once

// Limit-shape functions: the Logan-Shepp-Vershik-Kerov curve, the semicircle
// law and the family of limiting bumping-route curves beta_alpha.
//
// Coordinates: standard (x, y) with x the column direction and y the row
// direction, rotated u = x - y, v = x + y.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bumproute/errors.hpp"

namespace bumproute::analytics {

inline constexpr double kPi = std::numbers::pi;

// Slack within which arguments are clamped onto closed domains.
inline constexpr double kDomainSlack = 1e-15;
inline constexpr double kQuantileTol = 1e-12;
inline constexpr double kInverseTol = 1e-10;
// Above this alpha the curve is treated as the single endpoint.
inline constexpr double kDegenerateAlpha = 1.0 - 1e-12;
inline constexpr std::size_t kDefaultGridSize = 200;

namespace detail {

inline std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (got " << value << ")";
  return os.str();
}

// Clamps u onto [-2, 2] when it lies within the slack, throws otherwise.
inline double clamp_semicircle_arg(double u, const char* fn) {
  if (!(std::fabs(u) <= 2.0 + kDomainSlack))
    throw DomainError(describe(fn, u) + ": argument outside [-2, 2]");
  return std::clamp(u, -2.0, 2.0);
}

inline double clamp_unit(double p, const char* fn) {
  if (!(p >= -kDomainSlack && p <= 1.0 + kDomainSlack))
    throw DomainError(describe(fn, p) + ": argument outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace detail

/// Logan-Shepp-Vershik-Kerov limit shape in rotated coordinates.
inline double omega(double u) {
  u = detail::clamp_semicircle_arg(u, "omega");
  if (std::fabs(u) == 2.0) return 2.0;
  return 2.0 / kPi * (u * std::asin(u / 2.0) + std::sqrt(4.0 - u * u));
}

/// Derivative of omega: (2/pi) asin(u/2).
inline double omega_derivative(double u) {
  u = detail::clamp_semicircle_arg(u, "omega_derivative");
  return 2.0 / kPi * std::asin(u / 2.0);
}

/// CDF of the semicircle distribution on [-2, 2].
inline double semicircle_cdf(double u) {
  u = detail::clamp_semicircle_arg(u, "semicircle_cdf");
  if (u == -2.0) return 0.0;
  if (u == 2.0) return 1.0;
  return 0.5 + (u * std::sqrt(4.0 - u * u) / 4.0 + std::asin(u / 2.0)) / kPi;
}

inline double semicircle_density(double u) {
  u = detail::clamp_semicircle_arg(u, "semicircle_density");
  return std::sqrt(4.0 - u * u) / (2.0 * kPi);
}

/// Inverse of semicircle_cdf. Bisection to kQuantileTol, then Newton polish
/// kept inside the final bracket.
inline double semicircle_quantile(double p) {
  p = detail::clamp_unit(p, "semicircle_quantile");
  if (p == 0.0) return -2.0;
  if (p == 1.0) return 2.0;
  if (p == 0.5) return 0.0;

  double lo = -2.0;
  double hi = 2.0;
  while (hi - lo > kQuantileTol) {
    const double mid = 0.5 * (lo + hi);
    if (semicircle_cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  double u = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double d = semicircle_density(u);
    if (d < 1e-8) break;
    const double next = u - (semicircle_cdf(u) - p) / d;
    if (next <= lo || next >= hi) break;
    u = next;
  }
  return u;
}

/// Position on the limiting route at sublevel parameter t, in both frames.
struct CurveParams {
  double alpha;
  double t;
  double u;
  double v;
  double x;
  double y;
};

/// (u_alpha(t), v_alpha(t)) = sqrt(t) * (q, omega(q)) with q = F^{-1}(alpha/t).
inline CurveParams curve_params(double alpha, double t) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError(detail::describe("curve_params: alpha outside [0, 1)", alpha));
  if (!(t >= alpha && t <= 1.0)) throw DomainError(detail::describe("curve_params: t outside [alpha, 1]", t));
  if (t == 0.0) return {alpha, t, 0.0, 0.0, 0.0, 0.0};
  const double root = std::sqrt(t);
  const double q = semicircle_quantile(std::min(alpha / t, 1.0));
  const double u = root * q;
  const double v = root * omega(q);
  return {alpha, t, u, v, 0.5 * (v + u), 0.5 * (v - u)};
}

/// y_alpha(t), the row coordinate of the limiting route at parameter t.
inline double y_of(double alpha, double t) { return curve_params(alpha, t).y; }
inline double x_of(double alpha, double t) { return curve_params(alpha, t).x; }

/// Limiting scaled position (U, V) of the new box, in rotated coordinates.
inline std::pair<double, double> endpoint(double alpha) {
  alpha = detail::clamp_unit(alpha, "endpoint");
  const double u = semicircle_quantile(alpha);
  return {u, omega(u)};
}

/// Limiting scaled route length: (omega(F^{-1}(alpha)) - F^{-1}(alpha)) / 2.
inline double kappa(double alpha) {
  const auto [u, v] = endpoint(alpha);
  return 0.5 * (v - u);
}

/// Solves y_alpha(t) = s for t in [alpha, 1] by bisection; y_alpha is
/// strictly increasing in t with y_alpha(alpha) = 0, y_alpha(1) = kappa(alpha).
inline double y_inverse(double alpha, double s) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError(detail::describe("y_inverse: alpha outside [0, 1)", alpha));
  const double k = kappa(alpha);
  if (!(s >= -kInverseTol && s <= k + kInverseTol))
    throw DomainError(detail::describe("y_inverse: s outside [0, kappa(alpha)]", s));
  if (s <= 0.0) return alpha;
  if (s >= k) return 1.0;
  // y_0(t) = 2 sqrt(t)
  if (alpha == 0.0) return std::min(1.0, s * s / 4.0);

  double lo = alpha;
  double hi = 1.0;
  while (hi - lo > 0.01 * kInverseTol) {
    const double mid = 0.5 * (lo + hi);
    if (y_of(alpha, mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Limiting bumping-route curve: beta_alpha(s) = x_alpha(y_alpha^{-1}(s)).
inline double beta(double alpha, double s) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError(detail::describe("beta: alpha outside [0, 1)", alpha));
  if (alpha >= kDegenerateAlpha) {
    const auto [u, v] = endpoint(alpha);
    return 0.5 * (u + v);
  }
  if (alpha == 0.0) {
    (void)y_inverse(alpha, s);  // domain check only
    return 0.0;
  }
  return x_of(alpha, y_inverse(alpha, s));
}

/// Tabulated beta_alpha on a uniform grid in s, with kappa and the endpoint.
struct LimitCurve {
  struct Sample {
    double s;
    double beta;
  };

  double alpha = 0.0;
  double kappa = 0.0;
  std::pair<double, double> endpoint_uv{0.0, 0.0};
  std::vector<Sample> samples;

  /// Linear interpolation on the grid; s is clamped to [0, kappa].
  double interpolate(double s) const {
    if (samples.size() == 1 || s <= samples.front().s) return samples.front().beta;
    if (s >= samples.back().s) return samples.back().beta;
    auto it = std::lower_bound(samples.begin(), samples.end(), s,
                               [](const Sample& a, double v) { return a.s < v; });
    const Sample& b = *it;
    const Sample& a = *(it - 1);
    const double w = (s - a.s) / (b.s - a.s);
    return a.beta + w * (b.beta - a.beta);
  }
};

inline LimitCurve sample_curve(double alpha, std::size_t grid_size = kDefaultGridSize) {
  if (grid_size < 2) throw DomainError("sample_curve: grid_size must be at least 2");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError(detail::describe("sample_curve: alpha outside [0, 1)", alpha));
  LimitCurve c;
  c.alpha = alpha;
  c.kappa = kappa(alpha);
  c.endpoint_uv = endpoint(alpha);
  if (alpha >= kDegenerateAlpha || c.kappa <= 0.0) {
    c.samples.push_back({0.0, beta(alpha, 0.0)});
    return c;
  }
  c.samples.reserve(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    // The last node is pinned to kappa exactly so the grid ends at the endpoint.
    const double s = i + 1 == grid_size ? c.kappa : static_cast<double>(i) * c.kappa / static_cast<double>(grid_size - 1);
    c.samples.push_back({s, beta(alpha, s)});
  }
  return c;
}

}  // namespace bumproute::analytics

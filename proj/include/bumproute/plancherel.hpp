#pragma once

// Insertion tableaux of i.i.d. uniform entries, standardization to
// Plancherel-random standard tableaux, and sublevel tableaux.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "bumproute/errors.hpp"
#include "bumproute/rng.hpp"
#include "bumproute/tableau.hpp"

namespace bumproute::plancherel {

/// n i.i.d. uniform draws on (0,1), pairwise distinct. A repeated value is
/// redrawn in place; this changes nothing in distribution since ties have
/// probability zero.
inline std::vector<double> sample_distinct_uniforms(std::size_t n, SeededRng& rng) {
  std::vector<double> xs(n);
  for (auto& x : xs) x = rng.uniform_open01();

  std::vector<std::size_t> order(n);
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&xs](std::size_t a, std::size_t b) {
      return xs[a] < xs[b] || (xs[a] == xs[b] && a < b);
    });
    bool redrawn = false;
    for (std::size_t i = 1; i < n; ++i) {
      if (xs[order[i]] == xs[order[i - 1]]) {
        xs[order[i]] = rng.uniform_open01();
        redrawn = true;
      }
    }
    if (!redrawn) return xs;
  }
}

/// T_n = P(X_1, ..., X_n) for i.i.d. uniform X_j.
inline IncreasingTableau sample_uniform_tableau(std::size_t n, SeededRng& rng) {
  IncreasingTableau t;
  for (double x : sample_distinct_uniforms(n, rng)) t.insert_unchecked(x);
  return t;
}

/// Replaces each entry by its rank (1..n) among all entries.
inline IncreasingTableau standardize(const IncreasingTableau& tableau) {
  std::vector<double> sorted;
  sorted.reserve(tableau.order());
  for (const auto& row : tableau.rows()) sorted.insert(sorted.end(), row.begin(), row.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<Row> rows = tableau.rows();
  for (auto& row : rows)
    for (auto& x : row)
      x = static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin() + 1);
  return IncreasingTableau::from_rows(std::move(rows));
}

/// standardize(sample_uniform_tableau(n)): a Plancherel-distributed
/// standard Young tableau of order n.
inline IncreasingTableau sample_plancherel(std::size_t n, SeededRng& rng) {
  return standardize(sample_uniform_tableau(n, rng));
}

struct SublevelTableau {
  IncreasingTableau tableau;
  double threshold = 1.0;
  std::size_t order = 0;
};

namespace detail {

// Boxes with entry <= threshold. Each row keeps a prefix, and since columns
// increase upward the kept prefixes are weakly decreasing in length.
inline IncreasingTableau restrict_below(const IncreasingTableau& tableau, double threshold) {
  std::vector<Row> rows;
  for (const auto& row : tableau.rows()) {
    auto end = std::upper_bound(row.begin(), row.end(), threshold);
    if (end == row.begin()) break;
    rows.emplace_back(row.begin(), end);
  }
  return IncreasingTableau::from_rows(std::move(rows));
}

}  // namespace detail

/// T^{(t)}: the boxes of `tableau` holding entries <= t, in place.
inline SublevelTableau sublevel(const IncreasingTableau& tableau, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("sublevel: threshold outside (0, 1]");
  SublevelTableau s{detail::restrict_below(tableau, t), t, 0};
  s.order = s.tableau.order();
  return s;
}

/// k-sublevel of a standard tableau: the boxes with entries 1..k.
inline IncreasingTableau rank_sublevel(const IncreasingTableau& standard, std::size_t k) {
  if (k > standard.order()) throw DomainError("rank_sublevel: k exceeds tableau order");
  return detail::restrict_below(standard, static_cast<double>(k));
}

/// (1/t) T^{(t)}: every entry divided by the threshold.
inline IncreasingTableau rescale_entries(const SublevelTableau& sub) {
  std::vector<Row> rows = sub.tableau.rows();
  for (auto& row : rows)
    for (auto& x : row) x /= sub.threshold;
  return IncreasingTableau::from_rows(std::move(rows));
}

}  // namespace bumproute::plancherel

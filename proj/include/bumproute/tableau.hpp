#pragma once

// Increasing tableaux and Schensted row insertion with bumping-route recording.
//
// Rows are numbered from 1 at the bottom, columns from 1 at the left (the
// "French" picture). All externally reported positions are 1-based. Each row
// is kept sorted, so the leftmost entry exceeding the incoming value is found
// with a binary search.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bumproute/errors.hpp"

namespace bumproute {

using Row = std::vector<double>;

/// Young diagram: weakly decreasing positive row lengths.
class ShapePartition {
 public:
  ShapePartition() = default;

  explicit ShapePartition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] == 0) throw InvariantViolation("partition part must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw InvariantViolation("partition parts must be weakly decreasing");
    }
  }

  const std::vector<std::size_t>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }

  std::size_t order() const noexcept {
    std::size_t n = 0;
    for (auto p : parts_) n += p;
    return n;
  }

  /// Length of the first column, i.e. the number of rows.
  std::size_t first_column() const noexcept { return parts_.size(); }
  std::size_t first_row() const noexcept { return parts_.empty() ? 0 : parts_.front(); }

  /// True when every box of `other` is also a box of this diagram.
  bool contains(const ShapePartition& other) const noexcept {
    if (other.size() > size()) return false;
    for (std::size_t i = 0; i < other.size(); ++i)
      if (other.parts_[i] > parts_[i]) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ')';
    return os.str();
  }

  friend bool operator==(const ShapePartition&, const ShapePartition&) = default;
  friend auto operator<=>(const ShapePartition&, const ShapePartition&) = default;

 private:
  std::vector<std::size_t> parts_;
};

/// Column indices b(1) >= b(2) >= ... >= b(k), one per visited row.
class BumpingRoute {
 public:
  BumpingRoute() = default;
  explicit BumpingRoute(std::vector<std::size_t> columns) : columns_(std::move(columns)) {}

  const std::vector<std::size_t>& columns() const noexcept { return columns_; }
  std::size_t length() const noexcept { return columns_.size(); }

  /// Column of the route in row `m` (1-based).
  std::size_t column(std::size_t m) const { return columns_.at(m - 1); }

  /// Final box (column, row) added to the shape.
  std::pair<std::size_t, std::size_t> last_box() const {
    return {columns_.back(), columns_.size()};
  }

  bool is_nonincreasing() const noexcept {
    return std::is_sorted(columns_.rbegin(), columns_.rend());
  }

  friend bool operator==(const BumpingRoute&, const BumpingRoute&) = default;

 private:
  std::vector<std::size_t> columns_;
};

struct Violation {
  enum class Kind { NonFiniteEntry, RowNotIncreasing, ColumnNotIncreasing, ShapeNotPartition, DuplicateEntry };

  Kind kind;
  std::size_t row;     // 1-based
  std::size_t column;  // 1-based
  std::string message;
};

inline const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::NonFiniteEntry: return "non-finite entry";
    case Violation::Kind::RowNotIncreasing: return "row not strictly increasing";
    case Violation::Kind::ColumnNotIncreasing: return "column not strictly increasing";
    case Violation::Kind::ShapeNotPartition: return "row lengths not weakly decreasing";
    case Violation::Kind::DuplicateEntry: return "duplicate entry";
  }
  return "unknown";
}

/// Checks raw rows against every increasing-tableau invariant. Violations are
/// reported as data; an empty result means the rows form a valid tableau.
inline std::vector<Violation> validate(std::span<const Row> rows) {
  std::vector<Violation> out;
  auto report = [&out](Violation::Kind kind, std::size_t r, std::size_t c) {
    std::ostringstream os;
    os << to_string(kind) << " at row " << r << ", column " << c;
    out.push_back({kind, r, c, os.str()});
  };

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    if (row.empty()) report(Violation::Kind::ShapeNotPartition, r + 1, 1);
    if (r > 0 && row.size() > rows[r - 1].size())
      report(Violation::Kind::ShapeNotPartition, r + 1, rows[r - 1].size() + 1);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        report(Violation::Kind::NonFiniteEntry, r + 1, c + 1);
        continue;
      }
      if (c > 0 && std::isfinite(row[c - 1]) && !(row[c - 1] < row[c]))
        report(Violation::Kind::RowNotIncreasing, r + 1, c + 1);
      if (r > 0 && c < rows[r - 1].size() && std::isfinite(rows[r - 1][c]) && !(rows[r - 1][c] < row[c]))
        report(Violation::Kind::ColumnNotIncreasing, r + 1, c + 1);
    }
  }

  // Row and column monotonicity does not rule out equal entries in
  // incomparable boxes.
  struct Cell {
    double value;
    std::size_t r, c;
  };
  std::vector<Cell> cells;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      if (std::isfinite(rows[r][c])) cells.push_back({rows[r][c], r + 1, c + 1});
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < cells.size(); ++i)
    if (cells[i].value == cells[i - 1].value) report(Violation::Kind::DuplicateEntry, cells[i].r, cells[i].c);

  return out;
}

/// Left-justified rows of distinct reals, strictly increasing along rows and
/// up columns. Instances always satisfy their invariants.
class IncreasingTableau {
 public:
  IncreasingTableau() = default;

  /// Throws InvariantViolation listing the first failure when `rows` is invalid.
  static IncreasingTableau from_rows(std::vector<Row> rows) {
    auto violations = validate(rows);
    if (!violations.empty()) {
      std::string msg = "invalid tableau: " + violations.front().message;
      if (violations.size() > 1) msg += " (+" + std::to_string(violations.size() - 1) + " more)";
      throw InvariantViolation(msg);
    }
    IncreasingTableau t;
    t.rows_ = std::move(rows);
    for (const auto& row : t.rows_) t.order_ += row.size();
    return t;
  }

  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t order() const noexcept { return order_; }
  bool empty() const noexcept { return order_ == 0; }

  /// Length of row `r` (1-based); zero above the diagram.
  std::size_t row_length(std::size_t r) const noexcept {
    return r >= 1 && r <= rows_.size() ? rows_[r - 1].size() : 0;
  }

  /// Entry at (column, row), both 1-based.
  double at(std::size_t column, std::size_t row) const { return rows_.at(row - 1).at(column - 1); }

  ShapePartition shape() const {
    std::vector<std::size_t> parts;
    parts.reserve(rows_.size());
    for (const auto& row : rows_) parts.push_back(row.size());
    return ShapePartition(std::move(parts));
  }

  bool contains(double z) const {
    for (const auto& row : rows_)
      if (std::binary_search(row.begin(), row.end(), z)) return true;
    return false;
  }

  /// Route that inserting `z` would take, without modifying the tableau.
  BumpingRoute route_for(double z) const {
    require_insertable(z);
    std::vector<std::size_t> cols;
    double incoming = z;
    for (const auto& row : rows_) {
      auto pos = std::upper_bound(row.begin(), row.end(), incoming);
      cols.push_back(static_cast<std::size_t>(pos - row.begin()) + 1);
      if (pos == row.end()) return BumpingRoute(std::move(cols));
      incoming = *pos;
    }
    cols.push_back(1);
    return BumpingRoute(std::move(cols));
  }

  /// Row-inserts `z` in place and returns its bumping route.
  BumpingRoute insert(double z) {
    require_insertable(z);
    return insert_unchecked(z);
  }

  /// As insert(), but the caller guarantees that `z` is finite and not
  /// already present. Used by samplers that enforce distinctness up front.
  BumpingRoute insert_unchecked(double z) {
    std::vector<std::size_t> cols;
    double incoming = z;
    for (auto& row : rows_) {
      auto pos = std::upper_bound(row.begin(), row.end(), incoming);
      cols.push_back(static_cast<std::size_t>(pos - row.begin()) + 1);
      if (pos == row.end()) {
        row.push_back(incoming);
        ++order_;
        return BumpingRoute(std::move(cols));
      }
      std::swap(incoming, *pos);
    }
    rows_.push_back(Row{incoming});
    ++order_;
    cols.push_back(1);
    return BumpingRoute(std::move(cols));
  }

  friend bool operator==(const IncreasingTableau& a, const IncreasingTableau& b) { return a.rows_ == b.rows_; }

 private:
  void require_insertable(double z) const {
    if (!std::isfinite(z)) throw InvariantViolation("inserted value must be finite");
    if (contains(z)) {
      std::ostringstream os;
      os.precision(17);
      os << "value " << z << " already present in tableau";
      throw DistinctEntriesError(os.str());
    }
  }

  std::vector<Row> rows_;
  std::size_t order_ = 0;
};

inline std::vector<Violation> validate(const IncreasingTableau& tableau) { return validate(tableau.rows()); }

inline ShapePartition shape(const IncreasingTableau& tableau) { return tableau.shape(); }

/// For routes of z < z' into the same tableau: the route of z' lies weakly
/// to the right in every common row and the route of z is at least as long.
inline bool deformed_rightward(const BumpingRoute& lower, const BumpingRoute& upper) {
  if (lower.length() < upper.length()) return false;
  for (std::size_t m = 1; m <= upper.length(); ++m)
    if (upper.column(m) < lower.column(m)) return false;
  return true;
}

struct Insertion {
  IncreasingTableau tableau;
  BumpingRoute route;
};

/// Value-semantics insertion: returns P <- z together with the route.
inline Insertion insert(IncreasingTableau tableau, double z) {
  BumpingRoute route = tableau.insert(z);
  return {std::move(tableau), std::move(route)};
}

/// P(x_1, ..., x_n): iterated insertion starting from the empty tableau.
inline IncreasingTableau insertion_tableau(std::span<const double> sequence) {
  IncreasingTableau t;
  for (double x : sequence) t.insert(x);
  return t;
}

}  // namespace bumproute

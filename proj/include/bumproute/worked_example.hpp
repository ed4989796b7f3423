#pragma once

// The classic 20-box insertion example: inserting 7 bumps 8, 9, 11, 17 and
// settles 17 in a new box on row 5.

#include <cstddef>
#include <vector>

#include "bumproute/tableau.hpp"

namespace bumproute::worked_example {

inline std::vector<Row> before_rows() {
  return {{1, 2, 5, 8, 12, 15, 21}, {3, 6, 9, 16, 19}, {4, 11, 13, 18}, {10, 17, 20}, {14}};
}

inline constexpr double kInserted = 7.0;

inline std::vector<Row> after_rows() {
  return {{1, 2, 5, 7, 12, 15, 21}, {3, 6, 8, 16, 19}, {4, 9, 13, 18}, {10, 11, 20}, {14, 17}};
}

inline std::vector<std::size_t> route_columns() { return {4, 3, 2, 2, 2}; }

inline std::vector<std::size_t> before_shape() { return {7, 5, 4, 3, 1}; }

}  // namespace bumproute::worked_example

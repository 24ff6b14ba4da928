#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bicens/censdata.hpp"

namespace bicens {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// Maximal intersection of observation rectangles. Same side conventions as
// CensoringRectangle (closed, or open on a lower side).
struct CanonicalRectangle {
  double l1 = -kInf;
  double r1 = kInf;
  double l2 = -kInf;
  double r2 = kInf;
  bool l1_open = false;
  bool l2_open = false;

  bool operator==(const CanonicalRectangle&) const = default;
};

// Dense 0/1 matrix, one row per observation rectangle and one column per
// candidate mass point. Row-major.
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  IncidenceMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool at(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v) { bits_[i * cols_ + j] = v ? 1 : 0; }
  const std::uint8_t* row(std::size_t i) const { return bits_.data() + i * cols_; }

  // Rows without any candidate; such an observation forces loglik = -inf.
  std::vector<std::size_t> zero_rows() const;

  bool operator==(const IncidenceMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

// All maximal intersection rectangles, sorted by (l1, l2, r1, r2).
// Requires a nonempty dataset.
std::vector<CanonicalRectangle> maximal_intersections(const Dataset& data);

// Right upper corner of each canonical rectangle; an infinite upper side is
// replaced by (largest finite bound on that axis) + 1.
std::vector<Point> right_upper_corners(const std::vector<CanonicalRectangle>& canon,
                                       const Dataset& data);

IncidenceMatrix incidence(const Dataset& data, const std::vector<Point>& points);
IncidenceMatrix incidence_serial(const Dataset& data, const std::vector<Point>& points);

// Canonical rectangles as rectangle CSV without the freq column.
void write_canonical_csv(std::ostream& out, const std::vector<CanonicalRectangle>& canon);

}  // namespace bicens

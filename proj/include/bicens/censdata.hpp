#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace bicens {

// Bounds are plain doubles: +inf / -inf stand for an unknown upper / lower
// bound and IEEE ordering gives -inf < finite < +inf. NaN is never valid.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed rectangle [l1,r1] x [l2,r2], except that a lower side flagged
// open is (l, r]. Open lower sides only arise from current-status data
// with delta = 0.
struct CensoringRectangle {
  double l1 = -kInf;
  double r1 = kInf;
  double l2 = -kInf;
  double r2 = kInf;
  std::int64_t freq = 1;
  bool l1_open = false;
  bool l2_open = false;

  bool contains(double x, double y) const {
    const bool in_x = (l1_open ? x > l1 : x >= l1) && x <= r1;
    const bool in_y = (l2_open ? y > l2 : y >= l2) && y <= r2;
    return in_x && in_y;
  }

  bool same_region(const CensoringRectangle& o) const {
    return l1 == o.l1 && r1 == o.r1 && l2 == o.l2 && r2 == o.r2 && l1_open == o.l1_open &&
           l2_open == o.l2_open;
  }

  bool operator==(const CensoringRectangle&) const = default;
};

struct CurrentStatusObs {
  double t = 0.0;
  double u = 0.0;
  bool delta1 = false;  // X <= t
  bool delta2 = false;  // Y <= u
};

enum class DataKind { kCurrentStatus, kCase2 };

struct Dataset {
  std::vector<CensoringRectangle> rectangles;
  std::int64_t n = 0;
  DataKind kind = DataKind::kCase2;

  std::vector<double> frequencies() const;
  bool operator==(const Dataset&) const = default;
};

// Throws ValidationError when a rectangle breaks l <= r, freq >= 1 or has a NaN bound.
void validate(const CensoringRectangle& r);

// Reads `L1,R1,L2,R2,freq` records. A leading header line is optional.
// Bounds accept decimal numbers and the tokens inf / +inf / -inf.
Dataset parse_rectangle_csv(std::istream& in);
Dataset parse_rectangle_csv(const std::string& text);

// Writes the header and one record per rectangle with round-trip precision.
// Open lower sides cannot be expressed and raise ValidationError.
void write_rectangle_csv(std::ostream& out, const Dataset& data, bool with_freq = true);
std::string format_bound(double v);

// Current-status observations as `t,u,delta1,delta2`, header optional.
std::vector<CurrentStatusObs> parse_cs_csv(std::istream& in);
void write_cs_csv(std::ostream& out, const std::vector<CurrentStatusObs>& obs);

// Quadrant rectangles anchored at (t,u): delta=1 gives (-inf, t], delta=0
// gives (t, +inf). Identical rectangles are merged, first occurrence order.
Dataset cs_to_rectangles(const std::vector<CurrentStatusObs>& obs);

// The bundled Betensky-Finkelstein CMV shedding / MAC colonization data
// (87 rectangles, n = 204),
// bounds exactly as originally published.
Dataset bf_dataset();

}  // namespace bicens

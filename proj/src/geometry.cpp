#include "bicens/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace bicens {

namespace {

// Decomposition of one axis into elementary pieces: for sorted distinct
// finite values v_0 < ... < v_{k-1}, piece 2i is the open gap below v_i,
// piece 2i+1 is the point v_i and piece 2k is the gap above v_{k-1}.
class AxisPieces {
 public:
  explicit AxisPieces(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  }

  std::size_t count() const { return 2 * values_.size() + 1; }

  std::size_t lower_piece(double l, bool open) const {
    if (l == -kInf) return 0;
    const std::size_t i = index_of(l);
    return open ? 2 * i + 2 : 2 * i + 1;
  }

  std::size_t upper_piece(double r) const {
    if (r == kInf) return 2 * values_.size();
    return 2 * index_of(r) + 1;
  }

 private:
  std::size_t index_of(double v) const {
    return static_cast<std::size_t>(std::lower_bound(values_.begin(), values_.end(), v) -
                                    values_.begin());
  }

  std::vector<double> values_;
};

using Bits = std::vector<std::uint64_t>;

bool is_strict_subset(const Bits& a, const Bits& b) {
  bool strict = false;
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] & ~b[w]) return false;
    if (b[w] & ~a[w]) strict = true;
  }
  return strict;
}

bool any_bit(const Bits& a) {
  return std::any_of(a.begin(), a.end(), [](std::uint64_t w) { return w != 0; });
}

// Tighter lower side of two; at equal value the open side is tighter.
void tighten_lower(double l, bool open, double* cur, bool* cur_open) {
  if (l > *cur || (l == *cur && open)) {
    *cur = l;
    *cur_open = open;
  }
}

}  // namespace

std::vector<std::size_t> IncidenceMatrix::zero_rows() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto* r = row(i);
    if (std::none_of(r, r + cols_, [](std::uint8_t b) { return b != 0; })) out.push_back(i);
  }
  return out;
}

std::vector<CanonicalRectangle> maximal_intersections(const Dataset& data) {
  const auto& rects = data.rectangles;
  if (rects.empty()) throw std::invalid_argument("maximal_intersections: empty dataset");
  std::vector<double> xs, ys;
  for (const auto& r : rects) {
    for (double v : {r.l1, r.r1})
      if (std::isfinite(v)) xs.push_back(v);
    for (double v : {r.l2, r.r2})
      if (std::isfinite(v)) ys.push_back(v);
  }
  const AxisPieces ax(xs), ay(ys);
  const std::size_t words = (rects.size() + 63) / 64;

  // Covering sets of each elementary piece, per axis.
  std::vector<Bits> cover_x(ax.count(), Bits(words, 0)), cover_y(ay.count(), Bits(words, 0));
  for (std::size_t k = 0; k < rects.size(); ++k) {
    const auto& r = rects[k];
    const std::uint64_t bit = std::uint64_t{1} << (k % 64);
    for (auto i = ax.lower_piece(r.l1, r.l1_open); i <= ax.upper_piece(r.r1); ++i)
      cover_x[i][k / 64] |= bit;
    for (auto j = ay.lower_piece(r.l2, r.l2_open); j <= ay.upper_piece(r.r2); ++j)
      cover_y[j][k / 64] |= bit;
  }

  auto cell_set = [&](std::size_t i, std::size_t j) {
    Bits s(words);
    for (std::size_t w = 0; w < words; ++w) s[w] = cover_x[i][w] & cover_y[j][w];
    return s;
  };

  // Cells with no 4-neighbour covering a strict superset. Every covering set
  // is contained in the set of one of these, so global maximality only has to
  // be checked among them.
  std::map<Bits, bool> candidates;
  const std::size_t nx = ax.count(), ny = ay.count();
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      Bits s = cell_set(i, j);
      if (!any_bit(s) || candidates.count(s)) continue;
      bool local_max = true;
      const std::pair<long, long> steps[] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
      for (auto [di, dj] : steps) {
        const long ni = static_cast<long>(i) + di, nj = static_cast<long>(j) + dj;
        if (ni < 0 || nj < 0 || ni >= static_cast<long>(nx) || nj >= static_cast<long>(ny))
          continue;
        if (is_strict_subset(s, cell_set(ni, nj))) {
          local_max = false;
          break;
        }
      }
      if (local_max) candidates.emplace(std::move(s), true);
    }
  }

  std::vector<Bits> cand;
  for (auto& [s, _] : candidates) cand.push_back(s);

  std::vector<CanonicalRectangle> out;
  for (std::size_t a = 0; a < cand.size(); ++a) {
    bool maximal = true;
    for (std::size_t b = 0; b < cand.size() && maximal; ++b)
      if (a != b && is_strict_subset(cand[a], cand[b])) maximal = false;
    if (!maximal) continue;
    CanonicalRectangle c;
    for (std::size_t k = 0; k < rects.size(); ++k) {
      if (!((cand[a][k / 64] >> (k % 64)) & 1)) continue;
      const auto& r = rects[k];
      tighten_lower(r.l1, r.l1_open, &c.l1, &c.l1_open);
      tighten_lower(r.l2, r.l2_open, &c.l2, &c.l2_open);
      c.r1 = std::min(c.r1, r.r1);
      c.r2 = std::min(c.r2, r.r2);
    }
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const CanonicalRectangle& a, const CanonicalRectangle& b) {
    return std::tie(a.l1, a.l2, a.r1, a.r2, a.l1_open, a.l2_open) <
           std::tie(b.l1, b.l2, b.r1, b.r2, b.l1_open, b.l2_open);
  });
  return out;
}

std::vector<Point> right_upper_corners(const std::vector<CanonicalRectangle>& canon,
                                       const Dataset& data) {
  double max_x = -kInf, max_y = -kInf;
  for (const auto& r : data.rectangles) {
    for (double v : {r.l1, r.r1})
      if (std::isfinite(v)) max_x = std::max(max_x, v);
    for (double v : {r.l2, r.r2})
      if (std::isfinite(v)) max_y = std::max(max_y, v);
  }
  const double sentinel_x = std::isfinite(max_x) ? max_x + 1.0 : 1.0;
  const double sentinel_y = std::isfinite(max_y) ? max_y + 1.0 : 1.0;
  std::vector<Point> pts;
  pts.reserve(canon.size());
  for (const auto& c : canon)
    pts.push_back({std::isfinite(c.r1) ? c.r1 : sentinel_x, std::isfinite(c.r2) ? c.r2 : sentinel_y});
  return pts;
}

IncidenceMatrix incidence_serial(const Dataset& data, const std::vector<Point>& points) {
  IncidenceMatrix h(data.rectangles.size(), points.size());
  for (std::size_t i = 0; i < data.rectangles.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      h.set(i, j, data.rectangles[i].contains(points[j].x, points[j].y));
  return h;
}

IncidenceMatrix incidence(const Dataset& data, const std::vector<Point>& points) {
  IncidenceMatrix h(data.rectangles.size(), points.size());
  const long rows = static_cast<long>(data.rectangles.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < rows; ++i) {
    const auto& r = data.rectangles[i];
    for (std::size_t j = 0; j < points.size(); ++j)
      h.set(i, j, r.contains(points[j].x, points[j].y));
  }
  return h;
}

void write_canonical_csv(std::ostream& out, const std::vector<CanonicalRectangle>& canon) {
  Dataset d;
  for (const auto& c : canon) {
    CensoringRectangle r;
    r.l1 = c.l1;
    r.r1 = c.r1;
    r.l2 = c.l2;
    r.r2 = c.r2;
    r.l1_open = c.l1_open;
    r.l2_open = c.l2_open;
    d.rectangles.push_back(r);
  }
  write_rectangle_csv(out, d, false);
}

}  // namespace bicens

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace oracle {

using bicens::CanonicalRectangle;
using bicens::CensoringRectangle;
using bicens::Dataset;

namespace {

// One axis of a region: lower bound (open or closed) and closed upper bound.
struct Side {
  double lo, hi;
  bool lo_open;
};

Side meet(const Side& a, const Side& b) {
  Side s;
  if (a.lo > b.lo) {
    s.lo = a.lo, s.lo_open = a.lo_open;
  } else if (b.lo > a.lo) {
    s.lo = b.lo, s.lo_open = b.lo_open;
  } else {
    s.lo = a.lo, s.lo_open = a.lo_open || b.lo_open;
  }
  s.hi = std::min(a.hi, b.hi);
  return s;
}

bool empty(const Side& s) { return s.lo > s.hi || (s.lo == s.hi && s.lo_open); }

struct Region {
  Side x, y;
};

Region region_of(const CensoringRectangle& r) {
  return {{r.l1, r.r1, r.l1_open}, {r.l2, r.r2, r.l2_open}};
}

}  // namespace

std::vector<CanonicalRectangle> maximal_intersections(const Dataset& data) {
  const auto& rs = data.rectangles;
  const std::size_t k = rs.size();
  std::vector<CanonicalRectangle> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    Region reg{{-bicens::kInf, bicens::kInf, false}, {-bicens::kInf, bicens::kInf, false}};
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        const Region r = region_of(rs[i]);
        reg.x = meet(reg.x, r.x);
        reg.y = meet(reg.y, r.y);
      }
    if (empty(reg.x) || empty(reg.y)) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < k && maximal; ++i) {
      if (mask >> i & 1) continue;
      const Region r = region_of(rs[i]);
      if (!empty(meet(reg.x, r.x)) && !empty(meet(reg.y, r.y))) maximal = false;
    }
    if (!maximal) continue;
    out.push_back({reg.x.lo, reg.x.hi, reg.y.lo, reg.y.hi, reg.x.lo_open, reg.y.lo_open});
  }
  sort_rectangles(out);
  return out;
}

void sort_rectangles(std::vector<CanonicalRectangle>& v) {
  std::sort(v.begin(), v.end(), [](const CanonicalRectangle& a, const CanonicalRectangle& b) {
    return std::tie(a.l1, a.l2, a.r1, a.r2, a.l1_open, a.l2_open) <
           std::tie(b.l1, b.l2, b.r1, b.r2, b.l1_open, b.l2_open);
  });
}

namespace {

double loglik_at(const std::vector<std::vector<bool>>& cover, const std::vector<double>& freq,
                 const std::vector<double>& p) {
  double ll = 0.0;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (cover[i][j]) s += p[j];
    if (s <= 0.0) return -std::numeric_limits<double>::infinity();
    ll += freq[i] * std::log(s);
  }
  return ll;
}

// Visits every vector of `m` nonnegative multiples of 1/steps summing to one.
template <class F>
void compositions(int m, int steps, F&& visit) {
  std::vector<int> c(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == m - 1) {
      c[pos] = left;
      visit(c);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      c[pos] = a;
      rec(pos + 1, left - a);
    }
  };
  rec(0, steps);
}

}  // namespace

GridOptimum simplex_grid_loglik(const std::vector<std::vector<bool>>& cover,
                                const std::vector<double>& freq, double coarse) {
  const int m = cover.empty() ? 0 : static_cast<int>(cover[0].size());
  const int steps = static_cast<int>(std::lround(1.0 / coarse));
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_p(static_cast<std::size_t>(m), 0.0), p(best_p);
  compositions(m, steps, [&](const std::vector<int>& c) {
    for (int j = 0; j < m; ++j) p[j] = static_cast<double>(c[j]) / steps;
    const double ll = loglik_at(cover, freq, p);
    if (ll > best) best = ll, best_p = p;
  });
  if (m <= 1) return {best, best_p};

  // Fine pass: offsets in multiples of 1e-3 within one coarse step.
  const int reach = static_cast<int>(std::lround(coarse / 1e-3));
  const std::vector<double> centre = best_p;
  double fine_best = best;
  std::vector<double> fine_p = best_p;
  std::vector<int> off(static_cast<std::size_t>(m - 1), -reach);
  for (;;) {
    double sum = 0.0;
    bool ok = true;
    for (int j = 0; j < m - 1; ++j) {
      p[j] = centre[j] + off[j] * 1e-3;
      if (p[j] < -1e-12) ok = false;
      p[j] = std::max(p[j], 0.0);
      sum += p[j];
    }
    p[m - 1] = 1.0 - sum;
    if (ok && p[m - 1] >= -1e-12) {
      p[m - 1] = std::max(p[m - 1], 0.0);
      const double ll = loglik_at(cover, freq, p);
      if (ll > fine_best) fine_best = ll, fine_p = p;
    }
    int d = 0;
    while (d < m - 1 && off[d] == reach) off[d++] = -reach;
    if (d == m - 1) break;
    ++off[d];
  }
  return {fine_best, fine_p};
}

namespace {

struct Rule {
  std::vector<double> x, w;
};

// Nodes and weights on [-1,1] by Newton iteration on P_n.
Rule legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  const Rule r = legendre(order);
  const double step = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * step;
    for (int i = 0; i < order; ++i) total += r.w[i] * f(mid + 0.5 * step * r.x[i]);
  }
  return total * 0.5 * step;
}

double integrate2(const std::function<double(double, double)>& f, double a, double b, double c,
                  double d, int panels, int order) {
  return integrate(
      [&](double x) { return integrate([&](double y) { return f(x, y); }, c, d, panels, order); }, a,
      b, panels, order);
}

double f0a_cdf_by_quadrature(double x, double y) {
  x = std::clamp(x, 0.0, 1.0);
  y = std::clamp(y, 0.0, 1.0);
  if (x == 0.0 || y == 0.0) return 0.0;
  return integrate2([](double v, double w) { return v + w; }, 0.0, x, 0.0, y, 4, 4);
}

Dataset random_rectangles(std::mt19937_64& rng, int max_rects, int grid, bool allow_open) {
  std::uniform_int_distribution<int> count(1, max_rects), coord(0, grid), freq(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Dataset d;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    CensoringRectangle r;
    double* lo[2] = {&r.l1, &r.l2};
    double* hi[2] = {&r.r1, &r.r2};
    bool* open[2] = {&r.l1_open, &r.l2_open};
    for (int a = 0; a < 2; ++a) {
      int u = coord(rng), v = coord(rng);
      if (u > v) std::swap(u, v);
      *lo[a] = unit(rng) < 0.15 ? -bicens::kInf : u;
      *hi[a] = unit(rng) < 0.15 ? bicens::kInf : v;
      if (allow_open && std::isfinite(*lo[a]) && *lo[a] < *hi[a] && unit(rng) < 0.3) *open[a] = true;
    }
    r.freq = freq(rng);
    d.n += r.freq;
    d.rectangles.push_back(r);
  }
  return d;
}

FitInstance random_fit_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4), half(0, 8);
  for (;;) {
    FitInstance inst;
    inst.data = random_rectangles(rng, 6, 4, true);
    const int m = count(rng);
    for (int j = 0; j < m; ++j) inst.candidates.push_back({half(rng) / 2.0, half(rng) / 2.0});
    bool ok = true;
    for (const auto& r : inst.data.rectangles) {
      std::vector<bool> row;
      bool any = false;
      for (const auto& p : inst.candidates) {
        row.push_back(r.contains(p.x, p.y));
        any = any || row.back();
      }
      ok = ok && any;
      inst.cover.push_back(row);
    }
    if (ok) return inst;
  }
}

}  // namespace oracle

#include "bicens/plugin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bicens/errors.hpp"

namespace bicens {

namespace {

struct Flips {
  bool force1_hi = false;  // t > 1-h: T >= 2-t-h counts as delta = 1
  double hi_from = 0.0;
  bool force0_lo = false;  // t < h: T <= h-t counts as delta = 0
  double lo_to = 0.0;
};

Flips flips_for(double t, double h) {
  Flips f;
  if (t > 1.0 - h) {
    f.force1_hi = true;
    f.hi_from = 2.0 - t - h;
  }
  if (t < h) {
    f.force0_lo = true;
    f.lo_to = h - t;
  }
  return f;
}

bool apply(const Flips& f, double time, bool delta) {
  if (f.force1_hi && time >= f.hi_from) delta = true;
  if (f.force0_lo && time <= f.lo_to) delta = false;
  return delta;
}

double ratio(const std::vector<CurrentStatusObs>& obs, double t, double u, double h, bool boundary) {
  const Flips fx = boundary ? flips_for(t, h) : Flips{};
  const Flips fy = boundary ? flips_for(u, h) : Flips{};
  std::int64_t inside = 0, both = 0;
  for (const auto& o : obs) {
    if (std::abs(o.t - t) > h || std::abs(o.u - u) > h) continue;
    ++inside;
    if (apply(fx, o.t, o.delta1) && apply(fy, o.u, o.delta2)) ++both;
  }
  if (inside == 0)
    throw UndefinedCellError("no observation within " + std::to_string(h) + " of (" +
                             std::to_string(t) + ", " + std::to_string(u) + ")");
  return static_cast<double>(both) / static_cast<double>(inside);
}

}  // namespace

double plugin_eval(const std::vector<CurrentStatusObs>& obs, double t, double u, double h) {
  return ratio(obs, t, u, h, false);
}

double plugin_eval_boundary(const std::vector<CurrentStatusObs>& obs, double t, double u, double h) {
  return ratio(obs, t, u, h, true);
}

std::vector<double> lattice(double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
  const double steps = 1.0 / spacing;
  const auto k = static_cast<std::size_t>(std::floor(steps + 1e-9));
  std::vector<double> out;
  for (std::size_t i = 0; i <= k; ++i) out.push_back(std::min(1.0, i / steps));
  if (out.back() < 1.0 - 1e-9) out.push_back(1.0);
  return out;
}

namespace {

PluginGrid empty_grid(double spacing, double h) {
  PluginGrid g;
  g.spacing = spacing;
  g.halfwidth = h;
  g.xs = lattice(spacing);
  g.ys = g.xs;
  g.values.assign(g.xs.size() * g.ys.size(), 0.0);
  return g;
}

}  // namespace

PluginGrid build_plugin_grid_serial(const std::vector<CurrentStatusObs>& obs, double spacing,
                                    double h) {
  auto g = empty_grid(spacing, h);
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    for (std::size_t j = 0; j < g.ys.size(); ++j)
      g.values[i * g.ys.size() + j] = plugin_eval_boundary(obs, g.xs[i], g.ys[j], h);
  g.masses = solve_masses(g);
  return g;
}

PluginGrid build_plugin_grid(const std::vector<CurrentStatusObs>& obs, double spacing, double h) {
  auto g = empty_grid(spacing, h);
  const std::size_t ny = g.ys.size();
  const long cells = static_cast<long>(g.values.size());
  // Exceptions must not escape the parallel region; remember the first one.
  std::string failure;
#pragma omp parallel for schedule(static)
  for (long c = 0; c < cells; ++c) {
    try {
      g.values[c] = plugin_eval_boundary(obs, g.xs[c / ny], g.ys[c % ny], h);
    } catch (const UndefinedCellError& e) {
#pragma omp critical(bicens_plugin_failure)
      if (failure.empty()) failure = e.what();
    }
  }
  if (!failure.empty()) throw UndefinedCellError(failure);
  g.masses = solve_masses(g);
  return g;
}

PluginGrid build_plugin_grid(const std::vector<CurrentStatusObs>& obs, std::int64_t n) {
  if (n < 64) throw std::invalid_argument("build_plugin_grid: n must be at least 64");
  const double root = std::cbrt(static_cast<double>(n));
  return build_plugin_grid(obs, 1.0 / root, 1.0 / std::sqrt(root));
}

std::vector<double> solve_masses(const PluginGrid& grid) {
  const std::size_t nx = grid.xs.size(), ny = grid.ys.size();
  auto f = [&](std::size_t i, std::size_t j) { return grid.values[i * ny + j]; };
  std::vector<double> p(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      double v = f(i, j);
      if (i > 0) v -= f(i - 1, j);
      if (j > 0) v -= f(i, j - 1);
      if (i > 0 && j > 0) v += f(i - 1, j - 1);
      p[i * ny + j] = v;
    }
  }
  return p;
}

std::vector<double> cumulative_sums(const std::vector<double>& masses, std::size_t nx,
                                    std::size_t ny) {
  std::vector<double> c(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < ny; ++j) {
      row += masses[i * ny + j];
      c[i * ny + j] = row + (i > 0 ? c[(i - 1) * ny + j] : 0.0);
    }
  }
  return c;
}

Asymptotics plugin_asymptotics(double t, double u, double c, const LocalTruth& f0) {
  if (!(c > 0.0) || !(f0.g > 0.0) || !(f0.f > 0.0) || !(f0.f < 1.0))
    throw DomainError("plugin_asymptotics: need c > 0, g > 0 and 0 < F0 < 1 at (" +
                      std::to_string(t) + ", " + std::to_string(u) + ")");
  Asymptotics a;
  a.beta = c * ((f0.d11f + f0.d22f) / 6.0 + (f0.d1f * f0.d1g + f0.d2f * f0.d2g) / (3.0 * f0.g));
  a.sigma = std::sqrt(f0.f * (1.0 - f0.f) / (4.0 * c * f0.g));
  return a;
}

}  // namespace bicens

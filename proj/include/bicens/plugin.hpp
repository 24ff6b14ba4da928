#pragma once

#include <cstdint>
#include <vector>

#include "bicens/censdata.hpp"
#include "bicens/smle.hpp"
#include "bicens/truth.hpp"

namespace bicens {

// Local ratio estimate: the number of observations in the square
// [t-h,t+h] x [u-h,u+h] with delta1 = delta2 = 1, divided by the number of
// observations in the square. Throws UndefinedCellError if the square is empty.
double plugin_eval(const std::vector<CurrentStatusObs>& obs, double t, double u, double h);

// As plugin_eval, with indicator flipping near the boundary of [0,1]^2. For
// t > 1-h, observations with T >= 2-t-h count with delta1 = 1; for t < h,
// observations with T <= h-t count with delta1 = 0. Likewise for u.
double plugin_eval_boundary(const std::vector<CurrentStatusObs>& obs, double t, double u, double h);

// Plug-in estimate on a lattice in [0,1]^2, with the masses that reproduce
// it through cumulative sums. values / masses are indexed [ix * ys.size() + iy].
struct PluginGrid {
  double spacing = 0.0;
  double halfwidth = 0.0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;
  std::vector<double> masses;

  double value(std::size_t ix, std::size_t iy) const { return values[ix * ys.size() + iy]; }
  double mass(std::size_t ix, std::size_t iy) const { return masses[ix * ys.size() + iy]; }
};

// Multiples of `spacing` in [0,1], with 0 and 1 always included.
std::vector<double> lattice(double spacing);

// Lattice at multiples of n^{-1/3}, half-width n^{-1/6}, values from
// plugin_eval_boundary and masses from solve_masses. Requires n >= 64.
PluginGrid build_plugin_grid(const std::vector<CurrentStatusObs>& obs, std::int64_t n);
PluginGrid build_plugin_grid(const std::vector<CurrentStatusObs>& obs, double spacing, double h);
PluginGrid build_plugin_grid_serial(const std::vector<CurrentStatusObs>& obs, double spacing,
                                    double h);

// Inclusion-exclusion sweep from the lower-left corner:
// p_ij = F_ij - F_{i-1,j} - F_{i,j-1} + F_{i-1,j-1}. Masses can be negative.
std::vector<double> solve_masses(const PluginGrid& grid);

// Inverse of solve_masses: cumulative sums of lattice masses.
std::vector<double> cumulative_sums(const std::vector<double>& masses, std::size_t nx,
                                    std::size_t ny);

// Limit mean and sd of n^{1/3}(plug-in - F0), c = n^{1/3} h^2.
Asymptotics plugin_asymptotics(double t, double u, double c, const LocalTruth& f0);

}  // namespace bicens

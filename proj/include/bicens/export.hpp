#pragma once

#include <iosfwd>
#include <string>

#include "bicens/npmle.hpp"
#include "bicens/plugin.hpp"
#include "bicens/smle.hpp"

namespace bicens {

// `x,y,mass` with a header line.
void write_masses_csv(std::ostream& out, const DiscreteDistribution& dist);
// Reads `x,y,mass`; header optional. Throws ParseError.
DiscreteDistribution read_masses_csv(std::istream& in);

// {"loglik", "iterations", "max_fenchel", "support_size", "converged"}
std::string fit_report_json(const FitReport& report);

// `t,u,value`, one row per grid cell, x-major.
void write_grid_csv(std::ostream& out, const EstimateGrid& grid);

// `x,y,value,mass`, one row per lattice point, x-major.
void write_plugin_grid_csv(std::ostream& out, const PluginGrid& grid);

}  // namespace bicens

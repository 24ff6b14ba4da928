#include "bicens/export.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "bicens/errors.hpp"

namespace bicens {

namespace {

std::ostream& full_precision(std::ostream& out) { return out << std::setprecision(17); }

}  // namespace

void write_masses_csv(std::ostream& out, const DiscreteDistribution& dist) {
  out << "x,y,mass\n";
  full_precision(out);
  for (std::size_t j = 0; j < dist.points.size(); ++j)
    out << dist.points[j].x << ',' << dist.points[j].y << ',' << dist.masses[j] << '\n';
}

DiscreteDistribution read_masses_csv(std::istream& in) {
  DiscreteDistribution d;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<double> vals;
    bool ok = true;
    while (std::getline(ss, field, ',')) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        ok = false;
        break;
      }
      vals.push_back(v);
    }
    if (first && !ok) {
      first = false;
      continue;
    }
    first = false;
    if (!ok || vals.size() != 3) throw ParseError("expected x,y,mass", line_no);
    if (!std::isfinite(vals[0]) || !std::isfinite(vals[1]) || !std::isfinite(vals[2]))
      throw ParseError("non-finite value", line_no);
    d.points.push_back({vals[0], vals[1]});
    d.masses.push_back(vals[2]);
  }
  return d;
}

std::string fit_report_json(const FitReport& report) {
  nlohmann::json j;
  j["loglik"] = report.loglik;
  j["iterations"] = report.iterations;
  j["max_fenchel"] = report.max_fenchel;
  j["support_size"] = report.support_size;
  j["converged"] = report.converged;
  return j.dump(2);
}

void write_grid_csv(std::ostream& out, const EstimateGrid& grid) {
  out << "t,u,value\n";
  full_precision(out);
  for (std::size_t i = 0; i < grid.xs.size(); ++i)
    for (std::size_t k = 0; k < grid.ys.size(); ++k)
      out << grid.xs[i] << ',' << grid.ys[k] << ',' << grid.at(i, k) << '\n';
}

void write_plugin_grid_csv(std::ostream& out, const PluginGrid& grid) {
  out << "x,y,value,mass\n";
  full_precision(out);
  for (std::size_t i = 0; i < grid.xs.size(); ++i)
    for (std::size_t k = 0; k < grid.ys.size(); ++k)
      out << grid.xs[i] << ',' << grid.ys[k] << ',' << grid.value(i, k) << ',' << grid.mass(i, k)
          << '\n';
}

}  // namespace bicens

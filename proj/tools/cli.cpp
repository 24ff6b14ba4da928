#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "bicens/censdata.hpp"
#include "bicens/errors.hpp"
#include "bicens/export.hpp"
#include "bicens/geometry.hpp"
#include "bicens/npmle.hpp"
#include "bicens/plugin.hpp"
#include "bicens/simstudy.hpp"
#include "bicens/smle.hpp"

namespace bicens::cli {

namespace {

// Bad flags, unreadable paths and similar: exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fit did not converge or a certificate failed: exit 1.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through `fallback` when `path` is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw UsageError("write failed for '" + (path_.empty() ? "stdout" : path_) + "'");
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

enum class Format { kAuto, kRect, kCs };

// Four fields per record means current-status data, anything else rectangles.
Format sniff(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == "\r") continue;
    return std::count(line.begin(), line.end(), ',') == 3 ? Format::kCs : Format::kRect;
  }
  return Format::kRect;
}

struct Input {
  Dataset data;
  std::vector<CurrentStatusObs> obs;  // filled for current-status input
  bool current_status = false;
};

Input load(const std::string& path, Format format) {
  const std::string text = read_file(path);
  if (format == Format::kAuto) format = sniff(text);
  Input in;
  std::istringstream ss(text);
  if (format == Format::kCs) {
    in.obs = parse_cs_csv(ss);
    in.current_status = true;
    in.data = cs_to_rectangles(in.obs);
  } else {
    in.data = parse_rectangle_csv(ss);
  }
  if (in.data.rectangles.empty()) throw UsageError("input file '" + path + "' has no records");
  return in;
}

const std::map<std::string, Format> kFormats{
    {"auto", Format::kAuto}, {"rect", Format::kRect}, {"cs", Format::kCs}};
const std::map<std::string, Truth> kTruths{{"f0a", Truth::kF0A}, {"f0b", Truth::kF0B}};
const std::map<std::string, SieveLayout> kSieves{{"lattice", SieveLayout::kLattice},
                                                 {"centred", SieveLayout::kCellCentred}};

// "auto" or a positive number; 0 stands for auto.
double parse_bandwidth(const std::string& s) {
  if (s == "auto") return 0.0;
  double h = 0.0;
  try {
    std::size_t used = 0;
    h = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw UsageError("--h must be 'auto' or a positive number, got '" + s + "'");
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw UsageError("--h must be positive, got '" + s + "'");
  return h;
}

std::vector<double> linspace(double a, double b, int k) {
  std::vector<double> v(static_cast<std::size_t>(k));
  if (k == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < k; ++i) v[i] = a + (b - a) * i / (k - 1);
  v.back() = b;
  return v;
}

// Points like "0.2:0.6,0.4:0.6".
std::vector<Point> parse_points(const std::string& s) {
  std::vector<Point> pts;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(item);
      pts.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw UsageError("--points expects t:u pairs separated by commas, got '" + item + "'");
    }
  }
  if (pts.empty()) throw UsageError("--points is empty");
  return pts;
}

// ---------------------------------------------------------------- fit-mle

struct FitMleConfig {
  std::string input, out, report, canonical_out;
  Format format = Format::kAuto;
  std::string candidates = "canonical";
  std::uint64_t seed = 1;
};

int cmd_fit_mle(const FitMleConfig& cfg, std::ostream& out, std::ostream& err) {
  const Input in = load(cfg.input, cfg.format);
  std::vector<Point> points;
  std::vector<CanonicalRectangle> canon;
  if (cfg.candidates == "sieve") {
    points = random_sieve(in.data.n, cfg.seed);
  } else {
    canon = maximal_intersections(in.data);
    points = right_upper_corners(canon, in.data);
  }
  const auto h = incidence(in.data, points);
  const auto fitted = fit(h, in.data.frequencies());
  const auto dist = support_distribution(points, fitted.masses);

  Sink masses(cfg.out, out);
  write_masses_csv(*masses, dist);
  masses.finish();
  if (!cfg.canonical_out.empty()) {
    Sink c(cfg.canonical_out, out);
    write_canonical_csv(*c, canon);
    c.finish();
  }
  if (!cfg.report.empty()) {
    Sink r(cfg.report, out);
    *r << fit_report_json(fitted.report) << '\n';
    r.finish();
  }
  err << "fit-mle: " << points.size() << " candidates, support " << fitted.report.support_size
      << ", loglik " << fitted.report.loglik << ", max Fenchel " << fitted.report.max_fenchel
      << ", iterations " << fitted.report.iterations << '\n';
  if (!fitted.report.converged) throw CheckFailure("support reduction did not converge");
  return kOk;
}

// ------------------------------------------------------------------- eval

struct EvalConfig {
  std::string estimator = "smle";
  std::string input, masses, out, masses_out, marginal;
  Format format = Format::kAuto;
  std::int64_t n = 0;
  std::string h = "auto";
  int grid = 41;
};

int eval_smle(const EvalConfig& cfg, std::ostream& out, std::ostream& err) {
  DiscreteDistribution dist;
  std::int64_t n = cfg.n;
  if (!cfg.masses.empty()) {
    std::istringstream ss(read_file(cfg.masses));
    dist = read_masses_csv(ss);
    if (dist.points.empty()) throw UsageError("masses file '" + cfg.masses + "' is empty");
  } else {
    const Input in = load(cfg.input, cfg.format);
    const auto canon = maximal_intersections(in.data);
    const auto points = right_upper_corners(canon, in.data);
    const auto fitted = fit(incidence(in.data, points), in.data.frequencies());
    if (!fitted.report.converged) throw CheckFailure("support reduction did not converge");
    dist = support_distribution(points, fitted.masses);
    if (n == 0) n = in.data.n;
  }
  double h = parse_bandwidth(cfg.h);
  if (h == 0.0) {
    if (n <= 0) throw UsageError("--h auto needs the sample size; pass --n");
    h = std::pow(static_cast<double>(n), -1.0 / 6.0);
  }

  // Smoothing happens on the unit square; the box covers [0,1] and the support.
  Box box;
  for (const auto& p : dist.points) {
    box.x0 = std::min(box.x0, p.x);
    box.x1 = std::max(box.x1, p.x);
    box.y0 = std::min(box.y0, p.y);
    box.y1 = std::max(box.y1, p.y);
  }
  const SmleEstimate est{to_unit_square(dist, box), KernelSpec(KernelOrder::kSecond, h)};
  const auto unit = linspace(0.0, 1.0, cfg.grid);

  Sink sink(cfg.out, out);
  if (!cfg.marginal.empty()) {
    const Axis axis = cfg.marginal == "x" ? Axis::kX : Axis::kY;
    const double lo = axis == Axis::kX ? box.x0 : box.y0;
    const double hi = axis == Axis::kX ? box.x1 : box.y1;
    *sink << "t,value\n" << std::setprecision(17);
    for (double s : unit) *sink << lo + (hi - lo) * s << ',' << smle_marginal(est, axis, s) << '\n';
  } else {
    EstimateGrid grid = smle_grid(est, unit, unit);
    grid.xs = linspace(box.x0, box.x1, cfg.grid);
    grid.ys = linspace(box.y0, box.y1, cfg.grid);
    write_grid_csv(*sink, grid);
  }
  sink.finish();
  if (!cfg.masses_out.empty()) {
    Sink m(cfg.masses_out, out);
    write_masses_csv(*m, dist);
    m.finish();
  }
  err << "eval smle: h " << h << " on [" << box.x0 << ',' << box.x1 << "]x[" << box.y0 << ','
      << box.y1 << "]\n";
  return kOk;
}

int eval_plugin(const EvalConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.masses.empty()) throw UsageError("--masses is only meaningful with --estimator smle");
  if (!cfg.marginal.empty()) throw UsageError("--marginal is only meaningful with --estimator smle");
  const Input in = load(cfg.input, cfg.format == Format::kAuto ? Format::kCs : cfg.format);
  if (!in.current_status) throw UsageError("the plug-in estimator needs current-status input");
  const std::int64_t n = cfg.n > 0 ? cfg.n : static_cast<std::int64_t>(in.obs.size());
  if (n < 64) throw UsageError("the plug-in grid needs n >= 64");
  const double h = parse_bandwidth(cfg.h);
  const PluginGrid grid = h == 0.0
                              ? build_plugin_grid(in.obs, n)
                              : build_plugin_grid(in.obs, std::cbrt(1.0 / static_cast<double>(n)), h);
  Sink sink(cfg.out, out);
  write_plugin_grid_csv(*sink, grid);
  sink.finish();
  if (!cfg.masses_out.empty()) {
    DiscreteDistribution lattice_masses;
    for (std::size_t i = 0; i < grid.xs.size(); ++i)
      for (std::size_t k = 0; k < grid.ys.size(); ++k) {
        lattice_masses.points.push_back({grid.xs[i], grid.ys[k]});
        lattice_masses.masses.push_back(grid.mass(i, k));
      }
    Sink m(cfg.masses_out, out);
    write_masses_csv(*m, lattice_masses);
    m.finish();
  }
  err << "eval plugin: " << grid.xs.size() << "x" << grid.ys.size() << " lattice, spacing "
      << grid.spacing << ", half-width " << grid.halfwidth << '\n';
  return kOk;
}

int cmd_eval(const EvalConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.estimator == "plugin") return eval_plugin(cfg, out, err);
  return eval_smle(cfg, out, err);
}

// ------------------------------------------------------------------ check

struct CheckConfig {
  std::string input, masses;
  Format format = Format::kAuto;
  double tol = 1e-6;
  int probe = 50;
};

int cmd_check(const CheckConfig& cfg, std::ostream& out, std::ostream& err) {
  const Input in = load(cfg.input, cfg.format);
  std::istringstream ss(read_file(cfg.masses));
  const DiscreteDistribution dist = read_masses_csv(ss);
  if (dist.points.empty()) throw UsageError("masses file '" + cfg.masses + "' is empty");

  // Probe grid spans the finite bounds of the data plus one unit beyond.
  double lo1 = kInf, hi1 = -kInf, lo2 = kInf, hi2 = -kInf;
  for (const auto& r : in.data.rectangles) {
    for (double v : {r.l1, r.r1})
      if (std::isfinite(v)) lo1 = std::min(lo1, v), hi1 = std::max(hi1, v);
    for (double v : {r.l2, r.r2})
      if (std::isfinite(v)) lo2 = std::min(lo2, v), hi2 = std::max(hi2, v);
  }
  for (const auto& p : dist.points) {
    lo1 = std::min(lo1, p.x), hi1 = std::max(hi1, p.x);
    lo2 = std::min(lo2, p.y), hi2 = std::max(hi2, p.y);
  }
  std::vector<Point> probe;
  for (double x : linspace(lo1, hi1 + 1.0, cfg.probe))
    for (double y : linspace(lo2, hi2 + 1.0, cfg.probe)) probe.push_back({x, y});

  std::vector<double> at_support, at_probe;
  try {
    at_support = fenchel_check_ic2(in.data, dist, dist.points);
    at_probe = fenchel_check_ic2(in.data, dist, probe);
  } catch (const DomainError& e) {
    throw CheckFailure(std::string("certificate undefined: ") + e.what());
  }

  // Worst violation over: total mass, equality on the support, inequality on the probe grid.
  double worst = std::abs(dist.total() - 1.0);
  std::string where = "total mass " + std::to_string(dist.total());
  double support_max = 0.0, support_min = kInf, probe_max = 0.0;
  for (std::size_t j = 0; j < at_support.size(); ++j) {
    support_max = std::max(support_max, at_support[j]);
    support_min = std::min(support_min, at_support[j]);
    const double v = std::abs(at_support[j] - 1.0);
    if (v > worst) {
      worst = v;
      std::ostringstream w;
      w << std::setprecision(12) << "support point (" << dist.points[j].x << ',' << dist.points[j].y
        << ") value " << at_support[j];
      where = w.str();
    }
  }
  for (std::size_t j = 0; j < at_probe.size(); ++j) {
    probe_max = std::max(probe_max, at_probe[j]);
    const double v = at_probe[j] - 1.0;
    if (v > worst) {
      worst = v;
      std::ostringstream w;
      w << std::setprecision(12) << "probe point (" << probe[j].x << ',' << probe[j].y << ") value "
        << at_probe[j];
      where = w.str();
    }
  }
  out << std::setprecision(12) << "support: min " << support_min << " max " << support_max
      << "\nprobe " << cfg.probe << "x" << cfg.probe << ": max " << probe_max << '\n';
  if (worst > cfg.tol) {
    err << "check: FAILED, worst violation " << worst << " at " << where << '\n';
    return kFailure;
  }
  out << "check: certified within " << cfg.tol << '\n';
  return kOk;
}

// --------------------------------------------------------------- simulate

struct SimulateConfig {
  Truth truth = Truth::kF0A;
  std::int64_t n = 1000;
  int reps = 200;
  std::uint64_t seed = 1;
  double h_smle = 0.0, h_plugin = 0.0;
  std::string points, out;
  SieveLayout sieve = SieveLayout::kLattice;
  bool long_run = false;
};

int cmd_simulate(SimulateConfig cfg, std::ostream& out, std::ostream& err) {
  if (cfg.long_run) {
    cfg.n = 5000;
    cfg.reps = 1000;
    err << "simulate: long run (n = 5000, 1000 replications); expect hours on one core\n";
  }
  if (cfg.reps < 10)
    err << "warning: " << cfg.reps
        << " replications; the Monte Carlo standard errors are unreliable below 10\n";
  if (cfg.n < 8) throw UsageError("--n must be at least 8");
  Scenario sc;
  sc.truth = cfg.truth;
  sc.n = cfg.n;
  sc.reps = cfg.reps;
  sc.seed = cfg.seed;
  sc.bandwidth = {cfg.h_smle, cfg.h_plugin};
  sc.sieve = cfg.sieve;
  if (!cfg.points.empty()) sc.eval_points = parse_points(cfg.points);
  const StudyResult res = run_study(sc);
  Sink sink(cfg.out, out);
  write_study_csv(*sink, res);
  sink.finish();
  err << "simulate: " << res.reps_used << " replications used, " << res.failed_fits
      << " failed fits excluded, " << res.plugin_fallbacks << " plug-in window fallbacks\n";
  return kOk;
}

// ----------------------------------------------------------------- sample

struct SampleConfig {
  Truth truth = Truth::kF0A;
  std::int64_t n = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_sample(const SampleConfig& cfg, std::ostream& out) {
  Sink sink(cfg.out, out);
  write_cs_csv(*sink, make_cs_sample(cfg.truth, cfg.n, cfg.seed));
  sink.finish();
  return kOk;
}

void add_format(CLI::App* sub, Format& format) {
  sub->add_option("--format", format, "Input format: auto, rect (L1,R1,L2,R2,freq) or cs (t,u,delta1,delta2)")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->option_text("auto|rect|cs [auto]");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonparametric estimation for bivariate current-status and interval-censored data"};
  app.name(args.empty() ? "bicens" : args[0]);
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  FitMleConfig fit_cfg;
  auto* fit_cmd = app.add_subcommand("fit-mle", "Fit the NPMLE; write support masses and a JSON report");
  fit_cmd->add_option("--input", fit_cfg.input, "Observation CSV")->required();
  add_format(fit_cmd, fit_cfg.format);
  fit_cmd->add_option("--out", fit_cfg.out, "Masses CSV x,y,mass at right upper corners (default stdout)");
  fit_cmd->add_option("--report", fit_cfg.report, "Fit report JSON path");
  fit_cmd->add_option("--canonical-out", fit_cfg.canonical_out, "Maximal intersection rectangles CSV");
  fit_cmd->add_option("--candidates", fit_cfg.candidates, "Candidate mass points: canonical or sieve")
      ->check(CLI::IsMember({"canonical", "sieve"}))
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit_cfg.seed, "Seed of the random sieve")->capture_default_str();

  EvalConfig eval_cfg;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate the SMLE or the plug-in estimator on a grid");
  eval_cmd->add_option("--estimator", eval_cfg.estimator, "smle or plugin")
      ->check(CLI::IsMember({"smle", "plugin"}))
      ->capture_default_str();
  auto* eval_input = eval_cmd->add_option("--input", eval_cfg.input, "Observation CSV");
  auto* eval_masses =
      eval_cmd->add_option("--masses", eval_cfg.masses, "Fitted masses CSV (smle only, instead of --input)");
  eval_input->excludes(eval_masses);
  add_format(eval_cmd, eval_cfg.format);
  eval_cmd->add_option("--n", eval_cfg.n, "Sample size for the automatic bandwidth")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--h", eval_cfg.h, "Bandwidth on the unit square, or auto for n^(-1/6)")
      ->capture_default_str();
  eval_cmd->add_option("--grid", eval_cfg.grid, "Grid points per axis (smle)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval_cmd->add_option("--out", eval_cfg.out, "Grid CSV (default stdout)");
  eval_cmd->add_option("--masses-out", eval_cfg.masses_out, "Masses CSV of the estimate");
  eval_cmd->add_option("--marginal", eval_cfg.marginal, "Write the x or y marginal instead of the grid (smle)")
      ->check(CLI::IsMember({"x", "y"}));

  CheckConfig check_cfg;
  auto* check_cmd = app.add_subcommand("check", "Verify the Fenchel optimality certificate of a masses file");
  check_cmd->add_option("--input", check_cfg.input, "Observation CSV")->required();
  add_format(check_cmd, check_cfg.format);
  check_cmd->add_option("--masses", check_cfg.masses, "Masses CSV x,y,mass")->required();
  check_cmd->add_option("--tol", check_cfg.tol, "Allowed violation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  check_cmd->add_option("--probe", check_cfg.probe, "Probe grid points per axis")
      ->check(CLI::Range(2, 10000))
      ->capture_default_str();

  SimulateConfig sim_cfg;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo comparison of MLE, SMLE and plug-in");
  sim_cmd->add_option("--truth", sim_cfg.truth, "f0a (density x+y) or f0b (uniform)")
      ->transform(CLI::CheckedTransformer(kTruths, CLI::ignore_case))
      ->option_text("f0a|f0b [f0a]");
  auto* sim_n = sim_cmd->add_option("--n", sim_cfg.n, "Sample size")->check(CLI::PositiveNumber)->capture_default_str();
  auto* sim_reps =
      sim_cmd->add_option("--reps", sim_cfg.reps, "Replications")->check(CLI::PositiveNumber)->capture_default_str();
  sim_cmd->add_option("--seed", sim_cfg.seed, "Root seed")->capture_default_str();
  sim_cmd->add_option("--h-smle", sim_cfg.h_smle, "Fixed SMLE bandwidth (default n^(-1/6))")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--h-plugin", sim_cfg.h_plugin, "Fixed plug-in half-width (default n^(-1/6))")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--points", sim_cfg.points, "Evaluation points t:u,... (default 0.2..0.8 at u=0.6)");
  sim_cmd->add_option("--sieve", sim_cfg.sieve, "Sieve layout: lattice (multiples of n^(-1/3)) or centred")
      ->transform(CLI::CheckedTransformer(kSieves, CLI::ignore_case))
      ->option_text("lattice|centred [lattice]");
  sim_cmd->add_option("--out", sim_cfg.out, "Result CSV (default stdout)");
  sim_cmd->add_flag("--long-run", sim_cfg.long_run, "n = 5000 with 1000 replications (hours)")
      ->excludes(sim_n)
      ->excludes(sim_reps);

  SampleConfig sample_cfg;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a current-status sample t,u,delta1,delta2");
  sample_cmd->add_option("--truth", sample_cfg.truth, "f0a or f0b")
      ->transform(CLI::CheckedTransformer(kTruths, CLI::ignore_case))
      ->option_text("f0a|f0b [f0a]");
  sample_cmd->add_option("--n", sample_cfg.n, "Sample size")->check(CLI::PositiveNumber)->capture_default_str();
  sample_cmd->add_option("--seed", sample_cfg.seed, "Seed")->capture_default_str();
  sample_cmd->add_option("--out", sample_cfg.out, "Output CSV (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("bicens");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*fit_cmd) return cmd_fit_mle(fit_cfg, out, err);
    if (*eval_cmd) {
      if (eval_cfg.input.empty() && eval_cfg.masses.empty())
        throw UsageError("eval needs --input or --masses");
      return cmd_eval(eval_cfg, out, err);
    }
    if (*check_cmd) return cmd_check(check_cfg, out, err);
    if (*sim_cmd) return cmd_simulate(sim_cfg, out, err);
    if (*sample_cmd) return cmd_sample(sample_cfg, out);
  } catch (const CheckFailure& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const UnfittableError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const UndefinedCellError& e) {
    err << "error: " << e.what() << "; try a larger --h\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace bicens::cli

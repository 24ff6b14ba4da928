#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bicens/censdata.hpp"
#include "bicens/geometry.hpp"
#include "bicens/npmle.hpp"
#include "bicens/truth.hpp"

namespace bicens {

// i.i.d. draws of the hidden pair (X, Y). F0A uses the mixture
// x + y = (2x * 1 + 1 * 2y) / 2 with inverse-cdf sqrt(U) for the linear part.
std::vector<Point> sample_truth(Truth truth, std::int64_t n, std::uint64_t seed);

CurrentStatusObs observe(const Point& hidden, double t, double u);

// Current-status sample: hidden pairs from `truth`, observation times uniform
// on [0,1]^2 and independent of them.
std::vector<CurrentStatusObs> make_cs_sample(Truth truth, std::int64_t n, std::uint64_t seed);

// Bandwidths for the SMLE and the plug-in window. Zero means n^{-1/6}.
struct BandwidthRule {
  double smle_h = 0.0;
  double plugin_h = 0.0;

  double smle(std::int64_t n) const;
  double plugin(std::int64_t n) const;
};

struct Scenario {
  Truth truth = Truth::kF0A;
  std::int64_t n = 1000;
  int reps = 200;
  BandwidthRule bandwidth;
  std::vector<Point> eval_points = {{0.2, 0.6}, {0.4, 0.6}, {0.6, 0.6}, {0.8, 0.6}};
  std::uint64_t seed = 1;
  SieveLayout sieve = SieveLayout::kLattice;
};

// n^{1/3}-scaled summary of one estimator at one point, with Monte Carlo
// standard errors (normal-theory for the sd).
struct EstimatorStats {
  double scaled_sd = 0.0;
  double scaled_sd_se = 0.0;
  double scaled_bias = 0.0;
  double scaled_bias_se = 0.0;
  int count = 0;
};

struct PointResult {
  Point at;
  double truth = 0.0;
  EstimatorStats mle, smle, plugin;
};

struct StudyResult {
  Scenario scenario;
  std::vector<PointResult> points;
  int reps_used = 0;         // replications that entered the summaries
  int failed_fits = 0;       // sieved MLE did not certify; excluded
  int plugin_fallbacks = 0;  // plug-in evaluations that needed a doubled window
};

// Estimates of one replication at each evaluation point.
struct Replication {
  std::vector<double> mle, smle, plugin;
  bool fit_converged = false;
  int plugin_fallbacks = 0;
};

Replication run_replication(const Scenario& sc, int rep);

// Replications run in parallel; the summary is reduced in replication order,
// so the result does not depend on the thread count.
StudyResult run_study(const Scenario& sc);
StudyResult run_study_serial(const Scenario& sc);

StudyResult summarize(const Scenario& sc, const std::vector<Replication>& reps);

// One row per (t, n) and evaluation point: MLE / SMLE / plug-in scaled sd and
// bias, each followed by its Monte Carlo standard error.
void write_study_csv(std::ostream& out, const StudyResult& result);

}  // namespace bicens

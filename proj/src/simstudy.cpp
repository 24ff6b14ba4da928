#include "bicens/simstudy.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "bicens/errors.hpp"
#include "bicens/geometry.hpp"
#include "bicens/npmle.hpp"
#include "bicens/plugin.hpp"
#include "bicens/rng.hpp"
#include "bicens/smle.hpp"

namespace bicens {

namespace {

Point draw_hidden(Truth truth, Rng& rng) {
  const double a = rng.uniform(), b = rng.uniform();
  if (truth == Truth::kF0B) return {a, b};
  if (rng.uniform() < 0.5) return {std::sqrt(a), b};
  return {a, std::sqrt(b)};
}

double default_bandwidth(std::int64_t n) { return std::pow(static_cast<double>(n), -1.0 / 6.0); }

}  // namespace

std::vector<Point> sample_truth(Truth truth, std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_truth: n must be positive");
  Rng rng(seed);
  std::vector<Point> out(static_cast<std::size_t>(n));
  for (auto& p : out) p = draw_hidden(truth, rng);
  return out;
}

CurrentStatusObs observe(const Point& hidden, double t, double u) {
  return {t, u, hidden.x <= t, hidden.y <= u};
}

std::vector<CurrentStatusObs> make_cs_sample(Truth truth, std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("make_cs_sample: n must be positive");
  Rng rng(seed);
  std::vector<CurrentStatusObs> out(static_cast<std::size_t>(n));
  for (auto& o : out) {
    const Point hidden = draw_hidden(truth, rng);
    const double t = rng.uniform(), u = rng.uniform();
    o = observe(hidden, t, u);
  }
  return out;
}

double BandwidthRule::smle(std::int64_t n) const { return smle_h > 0.0 ? smle_h : default_bandwidth(n); }

double BandwidthRule::plugin(std::int64_t n) const {
  return plugin_h > 0.0 ? plugin_h : default_bandwidth(n);
}

Replication run_replication(const Scenario& sc, int rep) {
  const std::uint64_t stream = mix_seed(sc.seed, static_cast<std::uint64_t>(rep));
  const auto obs = make_cs_sample(sc.truth, sc.n, mix_seed(stream, 0));
  const auto sieve = random_sieve(sc.n, mix_seed(stream, 1), sc.sieve);
  const Dataset data = cs_to_rectangles(obs);
  const auto h = incidence_serial(data, sieve);
  const auto freq = data.frequencies();
  const auto fitted = fit(h, freq);

  Replication r;
  r.fit_converged = fitted.report.converged;
  const auto dist = support_distribution(sieve, fitted.masses);
  const SmleEstimate est{dist, KernelSpec(KernelOrder::kSecond, sc.bandwidth.smle(sc.n))};
  const double hp = sc.bandwidth.plugin(sc.n);
  for (const auto& pt : sc.eval_points) {
    r.mle.push_back(dist.cdf(pt.x, pt.y));
    r.smle.push_back(smle_eval(est, pt.x, pt.y));
    double width = hp;
    for (;;) {
      try {
        r.plugin.push_back(plugin_eval_boundary(obs, pt.x, pt.y, width));
        break;
      } catch (const UndefinedCellError&) {
        width *= 2.0;
        ++r.plugin_fallbacks;
      }
    }
  }
  return r;
}

namespace {

EstimatorStats stats_of(const std::vector<double>& values, double truth, double scale) {
  EstimatorStats s;
  s.count = static_cast<int>(values.size());
  if (s.count < 2) return s;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= s.count;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (s.count - 1));
  s.scaled_sd = scale * sd;
  s.scaled_sd_se = scale * sd / std::sqrt(2.0 * (s.count - 1));
  s.scaled_bias = scale * (mean - truth);
  s.scaled_bias_se = scale * sd / std::sqrt(static_cast<double>(s.count));
  return s;
}

}  // namespace

StudyResult summarize(const Scenario& sc, const std::vector<Replication>& reps) {
  StudyResult res;
  res.scenario = sc;
  const double scale = std::cbrt(static_cast<double>(sc.n));
  const std::size_t k = sc.eval_points.size();
  std::vector<std::vector<double>> mle(k), smle(k), plugin(k);
  for (const auto& r : reps) {
    res.plugin_fallbacks += r.plugin_fallbacks;
    if (!r.fit_converged) {
      ++res.failed_fits;
      continue;
    }
    ++res.reps_used;
    for (std::size_t i = 0; i < k; ++i) {
      mle[i].push_back(r.mle[i]);
      smle[i].push_back(r.smle[i]);
      plugin[i].push_back(r.plugin[i]);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    PointResult pr;
    pr.at = sc.eval_points[i];
    pr.truth = truth_cdf(sc.truth, pr.at.x, pr.at.y);
    pr.mle = stats_of(mle[i], pr.truth, scale);
    pr.smle = stats_of(smle[i], pr.truth, scale);
    pr.plugin = stats_of(plugin[i], pr.truth, scale);
    res.points.push_back(pr);
  }
  return res;
}

namespace {

// A replication that throws counts as a failed fit instead of aborting the study.
Replication guarded_replication(const Scenario& sc, int rep) {
  try {
    return run_replication(sc, rep);
  } catch (const std::exception&) {
    return Replication{};
  }
}

}  // namespace

StudyResult run_study_serial(const Scenario& sc) {
  if (sc.reps < 1) throw std::invalid_argument("run_study: reps must be positive");
  std::vector<Replication> reps(static_cast<std::size_t>(sc.reps));
  for (int r = 0; r < sc.reps; ++r) reps[r] = guarded_replication(sc, r);
  return summarize(sc, reps);
}

StudyResult run_study(const Scenario& sc) {
  if (sc.reps < 1) throw std::invalid_argument("run_study: reps must be positive");
  std::vector<Replication> reps(static_cast<std::size_t>(sc.reps));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < sc.reps; ++r) reps[r] = guarded_replication(sc, r);
  return summarize(sc, reps);
}

void write_study_csv(std::ostream& out, const StudyResult& result) {
  out << "t,u,n,reps,truth,mle_sd,mle_sd_se,smle_sd,smle_sd_se,plugin_sd,plugin_sd_se,"
         "mle_bias,mle_bias_se,smle_bias,smle_bias_se,plugin_bias,plugin_bias_se\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& p : result.points) {
    out << p.at.x << ',' << p.at.y << ',' << result.scenario.n << ',' << result.reps_used << ','
        << p.truth << ',' << p.mle.scaled_sd << ',' << p.mle.scaled_sd_se << ',' << p.smle.scaled_sd
        << ',' << p.smle.scaled_sd_se << ',' << p.plugin.scaled_sd << ',' << p.plugin.scaled_sd_se
        << ',' << p.mle.scaled_bias << ',' << p.mle.scaled_bias_se << ',' << p.smle.scaled_bias
        << ',' << p.smle.scaled_bias_se << ',' << p.plugin.scaled_bias << ','
        << p.plugin.scaled_bias_se << '\n';
  }
}

}  // namespace bicens

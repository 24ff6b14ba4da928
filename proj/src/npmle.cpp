#include "bicens/npmle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bicens/errors.hpp"
#include "bicens/rng.hpp"
#include "bicens/simplex_qp.hpp"

namespace bicens {

double DiscreteDistribution::total() const {
  return std::accumulate(masses.begin(), masses.end(), 0.0);
}

double DiscreteDistribution::cdf(double x, double y) const {
  double s = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (points[j].x <= x && points[j].y <= y) s += masses[j];
  return s;
}

double DiscreteDistribution::marginal_x(double x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (points[j].x <= x) s += masses[j];
  return s;
}

double DiscreteDistribution::marginal_y(double y) const {
  double s = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (points[j].y <= y) s += masses[j];
  return s;
}

double DiscreteDistribution::prob(const CensoringRectangle& r) const {
  double s = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (r.contains(points[j].x, points[j].y)) s += masses[j];
  return s;
}

namespace {

void check_dims(const IncidenceMatrix& h, std::span<const double> freq, std::size_t p_size) {
  if (freq.size() != h.rows() || p_size != h.cols())
    throw std::invalid_argument("dimension mismatch: H is " + std::to_string(h.rows()) + "x" +
                                std::to_string(h.cols()) + ", f has " +
                                std::to_string(freq.size()) + ", p has " + std::to_string(p_size));
}

std::vector<double> row_probs(const IncidenceMatrix& h, std::span<const double> p) {
  std::vector<double> hp(h.rows(), 0.0);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const auto* r = h.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (r[j] && p[j] != 0.0) s += p[j];
    hp[i] = s;
  }
  return hp;
}

double loglik_from_rows(std::span<const double> freq, const std::vector<double>& hp) {
  double l = 0.0;
  for (std::size_t i = 0; i < hp.size(); ++i) {
    if (freq[i] == 0.0) continue;
    if (hp[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    l += freq[i] * std::log(hp[i]);
  }
  return l;
}

// Change in log-likelihood between two row-probability vectors, computed
// term by term so that gains far below the rounding level of the total
// remain visible to the line search.
double loglik_gain(std::span<const double> freq, const std::vector<double>& from,
                   const std::vector<double>& to) {
  double d = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (freq[i] == 0.0) continue;
    if (to[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    d += freq[i] * std::log1p((to[i] - from[i]) / from[i]);
  }
  return d;
}

// Row-probability change H (to - from) over the columns in `cols`. Summing the
// differences directly keeps tiny steps exact; differencing two recomputed
// row sums would bury them in rounding noise.
void row_delta(const IncidenceMatrix& h, const std::vector<std::size_t>& cols, std::span<const double> from,
               std::span<const double> to, std::vector<double>& delta) {
  delta.assign(h.rows(), 0.0);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const auto* r = h.row(i);
    double s = 0.0;
    for (auto j : cols)
      if (r[j]) s += to[j] - from[j];
    delta[i] = s;
  }
}

double loglik_gain_delta(std::span<const double> freq, const std::vector<double>& from,
                         const std::vector<double>& delta) {
  double d = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (freq[i] == 0.0) continue;
    if (from[i] + delta[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    d += freq[i] * std::log1p(delta[i] / from[i]);
  }
  return d;
}

// Greedy set cover of the rows by columns; uniform mass on the chosen columns.
std::vector<double> hitting_set_start(const IncidenceMatrix& h, std::span<const double> freq) {
  std::vector<bool> covered(h.rows(), false);
  for (std::size_t i = 0; i < h.rows(); ++i) covered[i] = freq[i] == 0.0;
  std::vector<std::size_t> chosen;
  for (;;) {
    std::size_t best = h.cols();
    std::size_t best_count = 0;
    for (std::size_t j = 0; j < h.cols(); ++j) {
      std::size_t count = 0;
      for (std::size_t i = 0; i < h.rows(); ++i)
        if (!covered[i] && h.at(i, j)) ++count;
      if (count > best_count) {
        best_count = count;
        best = j;
      }
    }
    if (best == h.cols()) break;
    chosen.push_back(best);
    for (std::size_t i = 0; i < h.rows(); ++i)
      if (h.at(i, best)) covered[i] = true;
  }
  std::vector<double> p(h.cols(), 0.0);
  for (auto j : chosen) p[j] = 1.0 / static_cast<double>(chosen.size());
  return p;
}

}  // namespace

double loglik(const IncidenceMatrix& h, std::span<const double> freq, std::span<const double> p) {
  check_dims(h, freq, p.size());
  return loglik_from_rows(freq, row_probs(h, p));
}

std::vector<double> fenchel_values(const IncidenceMatrix& h, std::span<const double> freq,
                                   std::span<const double> p) {
  check_dims(h, freq, p.size());
  const auto hp = row_probs(h, p);
  const double n = std::accumulate(freq.begin(), freq.end(), 0.0);
  std::vector<double> g(h.cols(), 0.0);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (freq[i] == 0.0) continue;
    const double w = hp[i] > 0.0 ? freq[i] / hp[i] : std::numeric_limits<double>::infinity();
    const auto* r = h.row(i);
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (r[j]) g[j] += w;
  }
  for (auto& v : g) v /= n;
  return g;
}

FitResult fit(const IncidenceMatrix& h, std::span<const double> freq, const FitOptions& opts) {
  const std::size_t m = h.cols();
  check_dims(h, freq, m);
  for (auto i : h.zero_rows())
    if (freq[i] > 0.0)
      throw UnfittableError(
          "observation " + std::to_string(i) + " contains no candidate point (loglik = -inf)", i);

  FitResult res;
  std::vector<double> p = hitting_set_start(h, freq);
  auto hp = row_probs(h, p);
  double l = loglik_from_rows(freq, hp);
  res.report.trace.push_back(l);

  const double tol = opts.fenchel_tol;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    res.report.iterations = iter;
    const auto g = fenchel_values(h, freq, p);

    std::size_t best = 0;
    for (std::size_t j = 1; j < m; ++j)
      if (g[j] > g[best]) best = j;
    double min_active = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < m; ++j) {
      if (p[j] > 0.0) {
        support.push_back(j);
        min_active = std::min(min_active, g[j]);
      }
    }
    if (g[best] <= 1.0 + tol && min_active >= 1.0 - tol) {
      res.report.converged = true;
      break;
    }
    if (g[best] > 1.0 + tol && p[best] == 0.0) support.push_back(best);

    // Quadratic model of the log-likelihood (scaled by 1/n) on the support:
    // gradient g and negative Hessian W = sum_i f_i H_ij H_ik / (n (H_i'p)^2).
    const auto s = static_cast<Eigen::Index>(support.size());
    const double n = std::accumulate(freq.begin(), freq.end(), 0.0);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(s, s);
    std::vector<Eigen::Index> present;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      if (freq[i] == 0.0) continue;
      const auto* r = h.row(i);
      present.clear();
      for (Eigen::Index a = 0; a < s; ++a)
        if (r[support[a]]) present.push_back(a);
      const double wi = freq[i] / (n * hp[i] * hp[i]);
      for (auto a : present)
        for (auto b : present) w(a, b) += wi;
    }
    Eigen::VectorXd grad(s), p_s(s);
    for (Eigen::Index a = 0; a < s; ++a) {
      grad[a] = g[support[a]];
      p_s[a] = p[support[a]];
    }
    const Eigen::VectorXd c = grad + w * p_s;
    const double ridge = 1e-12 * std::max(1.0, w.diagonal().maxCoeff());
    const auto qp = solve_simplex_qp(w, c, p_s, ridge);
    Eigen::VectorXd d = qp.q - p_s;
    double slope = n * grad.dot(d);
    double step = 1.0;
    if (!(slope > 0.0)) {
      // Ill-conditioned model: fall back to shifting mass from the weakest
      // support point to the strongest, with a Newton step along that line.
      Eigen::Index hi = 0, lo = -1;
      for (Eigen::Index a = 0; a < s; ++a) {
        if (grad[a] > grad[hi]) hi = a;
        if (p_s[a] > 0.0 && (lo < 0 || grad[a] < grad[lo])) lo = a;
      }
      if (lo < 0 || !(grad[hi] > grad[lo])) break;
      d.setZero();
      d[hi] = 1.0;
      d[lo] = -1.0;
      slope = n * (grad[hi] - grad[lo]);
      const double curv = n * d.dot(w * d);
      step = curv > 0.0 ? std::min(p_s[lo], slope / curv) : p_s[lo];
    }

    // Armijo backtracking on the exact log-likelihood.
    std::vector<double> trial(p);
    double l_trial = -std::numeric_limits<double>::infinity();
    std::vector<double> hp_trial, delta;
    double gain = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 60; ++k) {
      trial = p;
      for (Eigen::Index a = 0; a < s; ++a) trial[support[a]] = std::max(0.0, p_s[a] + step * d[a]);
      row_delta(h, support, p, trial, delta);
      gain = loglik_gain_delta(freq, hp, delta);
      if (gain >= 1e-4 * step * slope) break;
      step *= 0.5;
    }
    if (!(gain >= 0.0)) break;
    l_trial = l + gain;
    hp_trial = hp;
    for (std::size_t i = 0; i < hp_trial.size(); ++i) hp_trial[i] += delta[i];

    // Prune negligible masses unless that would empty some observation.
    bool pruned = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (trial[j] > 0.0 && trial[j] <= opts.drop_tol) {
        const double keep = trial[j];
        trial[j] = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < h.rows() && ok; ++i)
          if (freq[i] > 0.0 && h.at(i, j) && hp_trial[i] - keep <= 0.0) ok = false;
        if (!ok) {
          trial[j] = keep;
        } else {
          pruned = true;
          for (std::size_t i = 0; i < h.rows(); ++i)
            if (h.at(i, j)) hp_trial[i] -= keep;
        }
      }
    }
    const double total = std::accumulate(trial.begin(), trial.end(), 0.0);
    for (auto& v : trial) v /= total;
    if (pruned) l_trial += loglik_gain(freq, hp_trial, row_probs(h, trial));
    hp_trial = row_probs(h, trial);
    p = std::move(trial);
    hp = std::move(hp_trial);
    l = l_trial;
    res.report.trace.push_back(l);
  }

  const auto g = fenchel_values(h, freq, p);
  res.report.loglik = loglik_from_rows(freq, hp);
  res.report.max_fenchel = *std::max_element(g.begin(), g.end());
  res.report.support_size = std::count_if(p.begin(), p.end(), [](double v) { return v > 0.0; });
  res.masses = std::move(p);
  return res;
}

DiscreteDistribution support_distribution(const std::vector<Point>& points,
                                          std::span<const double> masses, double drop_tol) {
  if (points.size() != masses.size())
    throw std::invalid_argument("support_distribution: points and masses differ in length");
  DiscreteDistribution d;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (masses[j] > drop_tol) {
      d.points.push_back(points[j]);
      d.masses.push_back(masses[j]);
    }
  }
  return d;
}

namespace {

std::vector<double> rectangle_probs(const Dataset& data, const DiscreteDistribution& dist) {
  std::vector<double> probs(data.rectangles.size());
  for (std::size_t i = 0; i < data.rectangles.size(); ++i) {
    probs[i] = dist.prob(data.rectangles[i]);
    if (data.rectangles[i].freq > 0 && probs[i] <= 0.0)
      throw DomainError("observation rectangle " + std::to_string(i) +
                        " has zero probability; Fenchel certificate undefined");
  }
  return probs;
}

double ic2_value(const Dataset& data, const std::vector<double>& probs, const Point& z) {
  double s = 0.0;
  for (std::size_t i = 0; i < data.rectangles.size(); ++i) {
    const auto& r = data.rectangles[i];
    if (r.contains(z.x, z.y)) s += static_cast<double>(r.freq) / probs[i];
  }
  return s / static_cast<double>(data.n);
}

}  // namespace

std::vector<double> fenchel_check_ic2_serial(const Dataset& data, const DiscreteDistribution& dist,
                                             const std::vector<Point>& test_points) {
  const auto probs = rectangle_probs(data, dist);
  std::vector<double> out(test_points.size());
  for (std::size_t k = 0; k < test_points.size(); ++k) out[k] = ic2_value(data, probs, test_points[k]);
  return out;
}

std::vector<double> fenchel_check_ic2(const Dataset& data, const DiscreteDistribution& dist,
                                      const std::vector<Point>& test_points) {
  const auto probs = rectangle_probs(data, dist);
  std::vector<double> out(test_points.size());
  const long count = static_cast<long>(test_points.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < count; ++k) out[k] = ic2_value(data, probs, test_points[k]);
  return out;
}

std::vector<double> fenchel_check_cs(const std::vector<CurrentStatusObs>& obs,
                                     const DiscreteDistribution& dist,
                                     const std::vector<Point>& test_points) {
  struct Cell {
    double t, u, denom;
    int type;  // 3: (1,1), 2: (1,0), 1: (0,1), 0: (0,0)
  };
  std::vector<Cell> cells;
  cells.reserve(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const auto& o = obs[i];
    const double f = dist.cdf(o.t, o.u);
    const double f1 = dist.marginal_x(o.t);
    const double f2 = dist.marginal_y(o.u);
    const double total = dist.total();
    double denom;
    int type;
    if (o.delta1 && o.delta2) {
      denom = f;
      type = 3;
    } else if (o.delta1) {
      denom = f1 - f;
      type = 2;
    } else if (o.delta2) {
      denom = f2 - f;
      type = 1;
    } else {
      denom = total - f1 - f2 + f;
      type = 0;
    }
    if (!(denom > 0.0))
      throw DomainError("observation " + std::to_string(i) +
                        " has zero probability; Fenchel certificate undefined");
    cells.push_back({o.t, o.u, denom, type});
  }
  std::vector<double> out(test_points.size(), 0.0);
  const double n = static_cast<double>(obs.size());
  for (std::size_t k = 0; k < test_points.size(); ++k) {
    const double t1 = test_points[k].x, t2 = test_points[k].y;
    double s = 0.0;
    for (const auto& c : cells) {
      const bool right = c.t >= t1;  // test point's first coordinate is <= T
      const bool above = c.u >= t2;
      switch (c.type) {
        case 3:
          if (right && above) s += 1.0 / c.denom;
          break;
        case 2:
          if (right && !above) s += 1.0 / c.denom;
          break;
        case 1:
          if (!right && above) s += 1.0 / c.denom;
          break;
        default:
          if (!right && !above) s += 1.0 / c.denom;
          break;
      }
    }
    out[k] = s / n;
  }
  return out;
}

std::vector<Point> random_sieve(std::int64_t n, std::uint64_t seed, SieveLayout layout) {
  if (n < 8) throw std::invalid_argument("random_sieve: n must be at least 8");
  const double root = std::cbrt(static_cast<double>(n));
  const auto m = static_cast<std::size_t>(std::floor(root * root + 1e-9));
  const bool centred = layout == SieveLayout::kCellCentred;
  const double offset = centred ? 0.5 : 0.0;
  const auto levels = centred ? static_cast<std::size_t>(std::floor(root + 0.5 + 1e-9))
                              : static_cast<std::size_t>(std::floor(root + 1e-9)) + 1;

  std::vector<std::size_t> xk(m), yk(m);
  for (std::size_t k = 0; k < m; ++k) xk[k] = k % levels;
  yk = xk;
  Rng rng(seed);
  for (std::size_t k = m; k > 1; --k) std::swap(yk[k - 1], yk[rng.below(k)]);

  // Swap y-levels between a repeated point and a random partner until all
  // points are distinct; the y-multiset is unchanged by the swaps.
  auto key = [&](std::size_t k) { return xk[k] * levels + yk[k]; };
  // The centred layout keeps repeats: it usually has no spare cells.
  for (int attempt = 0; !centred && attempt < 1000000; ++attempt) {
    std::vector<int> seen(levels * levels, -1);
    std::size_t dup = m;
    for (std::size_t k = 0; k < m; ++k) {
      if (seen[key(k)] >= 0) {
        dup = k;
        break;
      }
      seen[key(k)] = static_cast<int>(k);
    }
    if (dup == m) break;
    std::swap(yk[dup], yk[rng.below(m)]);
  }

  std::vector<Point> pts;
  pts.reserve(m + 4);
  for (std::size_t k = 0; k < m; ++k)
    pts.push_back({std::min(1.0, (xk[k] + offset) / root), std::min(1.0, (yk[k] + offset) / root)});
  pts.push_back({0.0, 0.0});
  pts.push_back({1.0, 0.0});
  pts.push_back({0.0, 1.0});
  pts.push_back({1.0, 1.0});
  return pts;
}

}  // namespace bicens

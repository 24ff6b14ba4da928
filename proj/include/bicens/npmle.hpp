#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bicens/censdata.hpp"
#include "bicens/geometry.hpp"

namespace bicens {

// Discrete bivariate distribution: mass masses[j] at points[j].
struct DiscreteDistribution {
  std::vector<Point> points;
  std::vector<double> masses;

  double total() const;
  // F(x, y) = sum of masses at points with px <= x and py <= y.
  double cdf(double x, double y) const;
  double marginal_x(double x) const;
  double marginal_y(double y) const;
  // Probability of a (possibly half-open) rectangle.
  double prob(const CensoringRectangle& r) const;
};

struct FitOptions {
  double fenchel_tol = 1e-8;
  double drop_tol = 1e-10;
  int max_iter = 10000;
};

struct FitReport {
  double loglik = 0.0;
  int iterations = 0;
  double max_fenchel = 0.0;
  std::int64_t support_size = 0;
  bool converged = false;
  // Log-likelihood after each outer iteration.
  std::vector<double> trace;
};

struct FitResult {
  std::vector<double> masses;  // one entry per candidate column, zero off the support
  FitReport report;
};

// sum_i f_i log(H_i' p); -inf if an observation with f_i > 0 gets zero probability.
// Throws std::invalid_argument on a dimension mismatch.
double loglik(const IncidenceMatrix& h, std::span<const double> freq, std::span<const double> p);

// Fenchel values sum_i f_i H_ij / (n H_i'p) for every column j.
std::vector<double> fenchel_values(const IncidenceMatrix& h, std::span<const double> freq,
                                   std::span<const double> p);

// Maximizes the log-likelihood over the probability simplex on the candidate
// columns by support reduction. Each outer iteration adds the column with the
// largest Fenchel value (if it exceeds 1 + fenchel_tol) and maximizes the
// local quadratic model on the enlarged support with an active-set solver,
// followed by an Armijo line search on the true log-likelihood.
// Throws UnfittableError if some row of H is all zero.
FitResult fit(const IncidenceMatrix& h, std::span<const double> freq, const FitOptions& opts = {});

// Support of a fit as a distribution (masses <= drop_tol removed).
DiscreteDistribution support_distribution(const std::vector<Point>& points,
                                          std::span<const double> masses, double drop_tol = 1e-10);

// Fenchel left-hand side for case-2 data at each test point:
// sum_R f_R 1{z in R} / (n P_F(R)). Throws DomainError when an occupied
// rectangle has zero probability under F.
std::vector<double> fenchel_check_ic2(const Dataset& data, const DiscreteDistribution& dist,
                                      const std::vector<Point>& test_points);
std::vector<double> fenchel_check_ic2_serial(const Dataset& data, const DiscreteDistribution& dist,
                                             const std::vector<Point>& test_points);

// Four-region Fenchel left-hand side for current-status data, written
// directly in terms of F, its marginals and the indicators.
std::vector<double> fenchel_check_cs(const std::vector<CurrentStatusObs>& obs,
                                     const DiscreteDistribution& dist,
                                     const std::vector<Point>& test_points);

// Sieve of floor(n^{2/3}) points on multiples of n^{-1/3} in [0,1]: the
// x-coordinates cycle through the multiples, the y-coordinates are a uniform
// random permutation of the same list (repaired so that no point repeats),
// followed by the four vertices of the unit square. Requires n >= 8.
//
// kCellCentred shifts the levels to the cell midpoints (k + 1/2) n^{-1/3}.
// A step df on the plain lattice is biased upward by about half a cell at
// lattice nodes; the centred layout avoids that at the usual evaluation points.
// Its points are not de-duplicated.
enum class SieveLayout { kLattice, kCellCentred };

std::vector<Point> random_sieve(std::int64_t n, std::uint64_t seed,
                                SieveLayout layout = SieveLayout::kLattice);

}  // namespace bicens

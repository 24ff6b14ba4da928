#pragma once

#include <string>
#include <vector>

#include "bicens/kernels.hpp"
#include "bicens/npmle.hpp"
#include "bicens/truth.hpp"

namespace bicens {

// Smoothed MLE: the masses of a fitted MLE integrated against a product of
// integrated kernels. Coordinates are assumed to live on [0,1]^2 (see
// to_unit_square).
struct SmleEstimate {
  DiscreteDistribution source;
  KernelSpec kernel;
};

// Values of an estimate on a rectangular grid; values[i * ys.size() + j] is
// the value at (xs[i], ys[j]).
struct EstimateGrid {
  std::string estimator;
  std::string parameters;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * ys.size() + j]; }
};

// Boundary-corrected SMLE: integrates
// {IK_h(t-v) + IK_h^b(2-t-v)} {IK_h(u-w) + IK_h^b(2-u-w)} against the masses.
double smle_eval(const SmleEstimate& est, double t, double u);
// Uncorrected SMLE, integrating IK_h(t-v) IK_h(u-w). Agrees with smle_eval
// when max(t,u) <= 1-h.
double smle_eval_interior(const SmleEstimate& est, double t, double u);

enum class Axis { kX, kY };
double smle_marginal(const SmleEstimate& est, Axis axis, double t);

EstimateGrid smle_grid(const SmleEstimate& est, const std::vector<double>& xs,
                       const std::vector<double>& ys);
EstimateGrid smle_grid_serial(const SmleEstimate& est, const std::vector<double>& xs,
                              const std::vector<double>& ys);

// Affine map of a distribution's support from [x0,x1] x [y0,y1] onto [0,1]^2.
struct Box {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
};
DiscreteDistribution to_unit_square(const DiscreteDistribution& dist, const Box& box);

struct Asymptotics {
  double beta = 0.0;
  double sigma = 0.0;
};

// The printed bias formula squares the kernel's second moment; the tabulated
// asymptotic biases correspond to a single factor.
enum class BiasConvention { kSingleMoment, kSquaredMoment };

// Limit mean and sd of n^{1/3}(SMLE - F0) for the triweight with
// c = n^{1/3} h^2. Throws DomainError when a denominator of the harmonic sum
// is not positive.
Asymptotics smle_asymptotics(double t, double u, double c, const LocalTruth& f0,
                             BiasConvention convention = BiasConvention::kSingleMoment);

}  // namespace bicens

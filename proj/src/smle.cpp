#include "bicens/smle.hpp"

#include <cmath>
#include <sstream>

#include "bicens/errors.hpp"

namespace bicens {

namespace {

double corrected_factor(const KernelSpec& k, double t, double v) {
  return k.integrated(t - v) + k.integrated_upper(2.0 - t - v);
}

}  // namespace

double smle_eval(const SmleEstimate& est, double t, double u) {
  const auto& d = est.source;
  double s = 0.0;
  for (std::size_t j = 0; j < d.points.size(); ++j)
    s += d.masses[j] * corrected_factor(est.kernel, t, d.points[j].x) *
         corrected_factor(est.kernel, u, d.points[j].y);
  return s;
}

double smle_eval_interior(const SmleEstimate& est, double t, double u) {
  const auto& d = est.source;
  double s = 0.0;
  for (std::size_t j = 0; j < d.points.size(); ++j)
    s += d.masses[j] * est.kernel.integrated(t - d.points[j].x) *
         est.kernel.integrated(u - d.points[j].y);
  return s;
}

double smle_marginal(const SmleEstimate& est, Axis axis, double t) {
  const auto& d = est.source;
  double s = 0.0;
  for (std::size_t j = 0; j < d.points.size(); ++j) {
    const double v = axis == Axis::kX ? d.points[j].x : d.points[j].y;
    s += d.masses[j] * corrected_factor(est.kernel, t, v);
  }
  return s;
}

namespace {

EstimateGrid empty_grid(const SmleEstimate& est, const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  EstimateGrid g;
  g.estimator = "smle";
  std::ostringstream params;
  params << "h=" << est.kernel.bandwidth()
         << ";kernel=" << (est.kernel.order() == KernelOrder::kSecond ? "triweight" : "triweight4");
  g.parameters = params.str();
  g.xs = xs;
  g.ys = ys;
  g.values.assign(xs.size() * ys.size(), 0.0);
  return g;
}

}  // namespace

EstimateGrid smle_grid_serial(const SmleEstimate& est, const std::vector<double>& xs,
                              const std::vector<double>& ys) {
  auto g = empty_grid(est, xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) g.values[i * ys.size() + j] = smle_eval(est, xs[i], ys[j]);
  return g;
}

EstimateGrid smle_grid(const SmleEstimate& est, const std::vector<double>& xs,
                       const std::vector<double>& ys) {
  auto g = empty_grid(est, xs, ys);
  const long cells = static_cast<long>(xs.size() * ys.size());
  const std::size_t ny = ys.size();
#pragma omp parallel for schedule(static)
  for (long c = 0; c < cells; ++c) {
    const std::size_t i = static_cast<std::size_t>(c) / ny, j = static_cast<std::size_t>(c) % ny;
    g.values[c] = smle_eval(est, xs[i], ys[j]);
  }
  return g;
}

DiscreteDistribution to_unit_square(const DiscreteDistribution& dist, const Box& box) {
  DiscreteDistribution out = dist;
  for (auto& p : out.points) {
    p.x = (p.x - box.x0) / (box.x1 - box.x0);
    p.y = (p.y - box.y0) / (box.y1 - box.y0);
  }
  return out;
}

Asymptotics smle_asymptotics(double t, double u, double c, const LocalTruth& f0,
                             BiasConvention convention) {
  if (!(c > 0.0) || !(f0.g > 0.0)) throw DomainError("smle_asymptotics: need c > 0 and g > 0");
  const double d[4] = {f0.f, f0.f_t1 - f0.f, f0.f_1u - f0.f, 1.0 - f0.f_t1 - f0.f_1u + f0.f};
  double harmonic = 0.0;
  for (double v : d) {
    if (!(v > 0.0))
      throw DomainError("smle_asymptotics: degenerate point (" + std::to_string(t) + ", " +
                        std::to_string(u) + ")");
    harmonic += 1.0 / v;
  }
  const double moment = convention == BiasConvention::kSingleMoment
                            ? kTriweightSecondMoment
                            : kTriweightSecondMoment * kTriweightSecondMoment;
  Asymptotics a;
  a.beta = 0.5 * c * (f0.d11f + f0.d22f) * moment;
  const double var = kTriweightRoughness * kTriweightRoughness / (c * harmonic * f0.g);
  a.sigma = std::sqrt(var);
  return a;
}

}  // namespace bicens

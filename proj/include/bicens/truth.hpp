#pragma once

namespace bicens {

// Hidden-variable distributions used in the simulation study, both on [0,1]^2
// with a uniform observation distribution.
//   kF0A: F(x,y) = xy(x+y)/2, density x + y
//   kF0B: F(x,y) = xy (uniform)
enum class Truth { kF0A, kF0B };

// Values and derivatives of F0 and of the observation density g at (t,u).
struct LocalTruth {
  double f = 0.0;     // F0(t,u)
  double f_t1 = 0.0;  // F0(t,1)
  double f_1u = 0.0;  // F0(1,u)
  double d1f = 0.0, d2f = 0.0;
  double d11f = 0.0, d22f = 0.0;
  double g = 1.0, d1g = 0.0, d2g = 0.0;
};

inline double truth_cdf(Truth truth, double x, double y) {
  if (x <= 0.0 || y <= 0.0) return 0.0;
  if (x > 1.0) x = 1.0;
  if (y > 1.0) y = 1.0;
  return truth == Truth::kF0A ? 0.5 * x * y * (x + y) : x * y;
}

inline LocalTruth local_truth(Truth truth, double t, double u) {
  LocalTruth lt;
  lt.f = truth_cdf(truth, t, u);
  lt.f_t1 = truth_cdf(truth, t, 1.0);
  lt.f_1u = truth_cdf(truth, 1.0, u);
  if (truth == Truth::kF0A) {
    lt.d1f = t * u + 0.5 * u * u;
    lt.d2f = t * u + 0.5 * t * t;
    lt.d11f = u;
    lt.d22f = t;
  } else {
    lt.d1f = u;
    lt.d2f = t;
  }
  return lt;
}

}  // namespace bicens

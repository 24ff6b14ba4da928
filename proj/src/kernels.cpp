#include "bicens/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace bicens {

double triweight(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  const double a = 1.0 - x * x;
  return 35.0 / 32.0 * a * a * a;
}

double triweight_integral(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double x2 = x * x;
  // 1/2 + 35/32 (x - x^3 + 3x^5/5 - x^7/7)
  return 0.5 + 35.0 / 32.0 * x * (1.0 + x2 * (-1.0 + x2 * (0.6 - x2 / 7.0)));
}

double triweight_upper(double x) {
  if (x <= -1.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return 1.0 - triweight_integral(x);
}

double triweight4(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  const double a = 1.0 - x * x;
  return 315.0 / 512.0 * a * a * a * (3.0 - 11.0 * x * x);
}

double triweight4_integral(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // Antiderivative of 315/512 (3 - 20x^2 + 42x^4 - 36x^6 + 11x^8), odd part.
  const double x2 = x * x;
  const double poly = 3.0 + x2 * (-20.0 / 3.0 + x2 * (42.0 / 5.0 + x2 * (-36.0 / 7.0 + x2 * 11.0 / 9.0)));
  return 0.5 + 315.0 / 512.0 * x * poly;
}

double triweight4_upper(double x) {
  if (x <= -1.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return 1.0 - triweight4_integral(x);
}

KernelSpec::KernelSpec(KernelOrder order, double bandwidth) : order_(order), h_(bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw std::invalid_argument("bandwidth must be positive and finite");
}

double KernelSpec::density(double x) const {
  const double z = x / h_;
  return (order_ == KernelOrder::kSecond ? triweight(z) : triweight4(z)) / h_;
}

double KernelSpec::integrated(double x) const {
  const double z = x / h_;
  return order_ == KernelOrder::kSecond ? triweight_integral(z) : triweight4_integral(z);
}

double KernelSpec::integrated_upper(double x) const {
  const double z = x / h_;
  return order_ == KernelOrder::kSecond ? triweight_upper(z) : triweight4_upper(z);
}

}  // namespace bicens

#pragma once

namespace bicens {

// Triweight kernel K(x) = 35/32 (1 - x^2)^3 on [-1, 1].
double triweight(double x);
// Integrated triweight, IK(x) = int_{-inf}^x K. Exact polynomial.
double triweight_integral(double x);
// Upper tail, IK^b(x) = int_x^inf K = 1 - IK(x).
double triweight_upper(double x);

// Fourth-order companion K1(u) = 315/512 (1 - u^2)^3 (3 - 11 u^2) on [-1, 1].
// Integrates to one with vanishing second moment; takes negative values.
double triweight4(double x);
double triweight4_integral(double x);
double triweight4_upper(double x);

enum class KernelOrder { kSecond, kFourth };

// Kernel choice plus bandwidth. Scaled forms are dimensionless in the
// integrated case: IK_h(x) = IK(x/h), IK_h^b(x) = IK^b(x/h).
class KernelSpec {
 public:
  KernelSpec(KernelOrder order, double bandwidth);

  KernelOrder order() const { return order_; }
  double bandwidth() const { return h_; }

  double density(double x) const;          // K_h(x) = K(x/h) / h
  double integrated(double x) const;       // IK(x/h)
  double integrated_upper(double x) const;  // IK^b(x/h)

 private:
  KernelOrder order_;
  double h_;
};

// Moment constants of the triweight.
inline constexpr double kTriweightSecondMoment = 1.0 / 9.0;        // int x^2 K
inline constexpr double kTriweightRoughness = 350.0 / 429.0;       // int K^2

}  // namespace bicens

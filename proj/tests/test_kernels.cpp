#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bicens/kernels.hpp"
#include "oracles.hpp"

using namespace bicens;

TEST_CASE("triweight point values") {
  CHECK(triweight(0.0) == doctest::Approx(35.0 / 32.0));
  CHECK(triweight(1.0) == 0.0);
  CHECK(triweight(-1.0) == 0.0);
  CHECK(triweight(1.5) == 0.0);
  CHECK(triweight(0.3) == triweight(-0.3));
}

TEST_CASE("triweight moments against quadrature") {
  const double mass = oracle::integrate(triweight, -1, 1);
  const double second = oracle::integrate([](double x) { return x * x * triweight(x); }, -1, 1);
  const double rough = oracle::integrate([](double x) { return triweight(x) * triweight(x); }, -1, 1);
  CHECK(std::abs(mass - 1.0) < 1e-10);
  CHECK(std::abs(second - kTriweightSecondMoment) < 1e-10);
  CHECK(std::abs(rough - kTriweightRoughness) < 1e-10);
  CHECK(kTriweightRoughness == doctest::Approx(0.815850).epsilon(1e-6));
}

TEST_CASE("integrated triweight") {
  CHECK(triweight_integral(-1.0) == 0.0);
  CHECK(triweight_integral(1.0) == 1.0);
  CHECK(triweight_integral(-3.0) == 0.0);
  CHECK(triweight_integral(3.0) == 1.0);
  CHECK(triweight_integral(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (double x : {-0.9, -0.5, 0.0, 0.25, 0.5, 0.77}) {
    const double want = oracle::integrate(triweight, -1, x);
    CHECK(std::abs(triweight_integral(x) - want) < 1e-12);
  }
}

TEST_CASE("upper integrated triweight") {
  CHECK(triweight_upper(-1.0) == 1.0);
  CHECK(triweight_upper(1.0) == 0.0);
  for (double x : {-2.0, -0.7, 0.0, 0.3, 0.9, 4.0})
    CHECK(triweight_upper(x) + triweight_integral(x) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("fourth-order kernel") {
  CHECK(triweight4(0.0) == doctest::Approx(945.0 / 512.0));
  CHECK(triweight4(0.9) < 0.0);
  CHECK(triweight4(1.2) == 0.0);
  const double mass = oracle::integrate(triweight4, -1, 1);
  const double second = oracle::integrate([](double x) { return x * x * triweight4(x); }, -1, 1);
  CHECK(std::abs(mass - 1.0) < 1e-10);
  CHECK(std::abs(second) < 1e-10);
  for (double x : {-0.6, 0.0, 0.4, 0.95}) {
    CHECK(std::abs(triweight4_integral(x) - oracle::integrate(triweight4, -1, x)) < 1e-12);
    CHECK(triweight4_upper(x) + triweight4_integral(x) == doctest::Approx(1.0));
  }
  CHECK(triweight4_integral(1.0) == doctest::Approx(1.0));
}

TEST_CASE("kernel spec scaling") {
  const KernelSpec k(KernelOrder::kSecond, 0.2);
  CHECK(k.bandwidth() == 0.2);
  CHECK(k.density(0.1) == doctest::Approx(triweight(0.5) / 0.2));
  CHECK(k.integrated(0.1) == doctest::Approx(triweight_integral(0.5)));
  CHECK(k.integrated_upper(-0.1) == doctest::Approx(triweight_upper(-0.5)));
  const KernelSpec k4(KernelOrder::kFourth, 0.5);
  CHECK(k4.density(0.0) == doctest::Approx(triweight4(0.0) / 0.5));
  CHECK(std::abs(oracle::integrate([&](double x) { return k.density(x); }, -0.2, 0.2) - 1.0) < 1e-10);
  CHECK_THROWS_AS(KernelSpec(KernelOrder::kSecond, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec(KernelOrder::kSecond, -1.0), std::invalid_argument);
}

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dpc/errors.hpp"
#include "dpc/specialfn.hpp"

using namespace dpc;
using std::numbers::pi;

TEST_CASE("besselJ special values") {
  CHECK(besselJ(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(besselJ(0.5, pi / 2) == doctest::Approx(2.0 / pi).epsilon(1e-14));
  CHECK(std::abs(besselJ(0.0, 2.404825557695773)) <= 1e-12);
  CHECK(besselJ(1.0, 2.40482555769577277) == doctest::Approx(0.519147497289466788).epsilon(1e-13));
}

TEST_CASE("besselJ matches the half-order closed form") {
  for (double x : {0.1, 1.0, 3.7, 12.0, 45.0, 300.0, 2500.0}) {
    const double ref = std::sqrt(2.0 / (pi * x)) * std::sin(x);
    CHECK(std::abs(besselJ(0.5, x) - ref) <= 1e-14 * std::max(1.0, std::abs(ref)) + 1e-15);
  }
}

TEST_CASE("besselJ agrees with an independent implementation") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> nuD(0.0, 12.0), xD(0.0, 120.0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double nu = nuD(gen), x = xD(gen);
    worst = std::max(worst, std::abs(besselJ(nu, x) - boost::math::cyl_bessel_j(nu, x)));
  }
  CHECK(worst <= 1e-13);
  for (double x : {1500.0, 4000.0, 1e5}) CHECK(std::abs(besselJ(2.5, x) - boost::math::cyl_bessel_j(2.5, x)) <= 5e-14);
}

TEST_CASE("besselJprime") {
  CHECK(besselJprime(0.5, pi) == doctest::Approx(-0.450158158078553).epsilon(1e-13));
  CHECK(besselJprime(0.0, 2.40482555769577277) == doctest::Approx(-0.519147497289466788).epsilon(1e-13));
  CHECK(std::abs(besselJprime(2.0, 1e-6)) <= 1e-6);
  CHECK_THROWS_AS(besselJprime(1.0, 0.0), Error);
  CHECK_THROWS_AS(besselJ(-1.0, 1.0), Error);
}

TEST_CASE("besselZeros") {
  const auto half = besselZeros(0.5, 3);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(half.zeros[k] - (k + 1) * pi) <= 1e-12);

  struct Row {
    double nu, z1, z2, z30, z50;
  };
  const Row rows[] = {{0.0, 2.4048255576957728, 5.5200781102863106, 93.463718781944774, 156.29503426853352},
                      {0.3, 2.8540972243766844, 5.9822213218635111, 93.934471950331909, 156.76598371826223},
                      {2.0, 5.1356223018406826, 8.4172441403998649, 96.584561447783204, 159.42406617141825},
                      {5.0, 8.771483815959954, 12.338604197466944, 101.19405462630896, 164.07278793052757}};
  for (const auto& r : rows) {
    const auto z = besselZeros(r.nu, 50);
    CHECK(z.zeros[0] == doctest::Approx(r.z1).epsilon(1e-13));
    CHECK(z.zeros[1] == doctest::Approx(r.z2).epsilon(1e-13));
    CHECK(z.zeros[29] == doctest::Approx(r.z30).epsilon(1e-13));
    CHECK(z.zeros[49] == doctest::Approx(r.z50).epsilon(1e-13));
    for (std::size_t k = 1; k < z.size(); ++k) {
      CHECK(z.zeros[k] > z.zeros[k - 1]);
      CHECK(std::signbit(z.derivs[k]) != std::signbit(z.derivs[k - 1]));
    }
  }
  const auto z5 = besselZeros(5.0, 2);
  CHECK(z5.zeros[1] - z5.zeros[0] > pi);
  CHECK(besselZeros(2.0, 1).derivs[0] == doctest::Approx(-0.339668742773732401).epsilon(1e-13));
  CHECK_THROWS_AS(besselZeros(1.0, 0), Error);
}

TEST_CASE("mcmahonZero is a close seed") {
  CHECK(std::abs(mcmahonZero(0.0, 30) - 93.463718781944774) < 1e-8);
  CHECK(std::abs(mcmahonZero(2.0, 2) - 8.4172441403998649) < 1e-3);
}

TEST_CASE("gammaFn") {
  CHECK(gammaFn(1.0) == doctest::Approx(1.0));
  CHECK(gammaFn(1.5) == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-15));
  CHECK(gammaFn(5.0) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK_THROWS_AS(gammaFn(0.0), Error);
}

#include <cmath>
#include <memory>
#include <numbers>
#include <tuple>

#include "doctest.h"
#include "dpc/errors.hpp"
#include "dpc/spectral.hpp"

using namespace dpc;
using std::numbers::pi;

namespace {

ErrorCode codeOf(double a, double b, double m) {
  try {
    makeParams(a, b, m);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("makeParams accepted (" << a << ", " << b << ", " << m << ")");
  return ErrorCode::DomainError;
}

}  // namespace

TEST_CASE("makeParams derived fields") {
  const auto p = makeParams(0.0, 2.0, 0.0);
  CHECK(p.regime == Regime::Supercritical);
  CHECK(p.kappa == doctest::Approx(1.0));
  CHECK(p.nu == doctest::Approx(0.5));
  CHECK(p.gamma == doctest::Approx(-2.0));
  CHECK(muCrit(2.0) == doctest::Approx(0.25));

  const auto c = makeParams(1.0, 0.0, -1.0);
  CHECK(c.regime == Regime::Critical);
  CHECK(c.kappa == doctest::Approx(0.5));
  CHECK(c.nu == doctest::Approx(2.0));
  CHECK(c.gamma == doctest::Approx(-2.0));
}

TEST_CASE("makeParams rejects invalid input") {
  CHECK(codeOf(0.0, 2.0, 0.25) == ErrorCode::MuTooLarge);
  CHECK(codeOf(2.0, 0.0, -1.0) == ErrorCode::AlphaRange);
  CHECK(codeOf(-0.1, 2.0, 0.0) == ErrorCode::AlphaRange);
  CHECK(codeOf(0.0, 0.5, 0.0) == ErrorCode::SubcriticalSum);
  CHECK(codeOf(0.5, 0.5, 0.0) == ErrorCode::CriticalMuNonnegative);
}

TEST_CASE("basis for the half-order case") {
  const auto b = buildBasis(makeParams(0.0, 2.0, 0.0), 3);
  for (std::size_t k = 1; k <= 3; ++k) CHECK(b.lambda(k) == doctest::Approx(k * k * pi * pi).epsilon(1e-13));
  CHECK(b.neumannTrace[0] == doctest::Approx(std::sqrt(2.0) * pi).epsilon(1e-12));
  CHECK(b.dirichletDerivTrace[0] == doctest::Approx(-std::sqrt(2.0) * pi).epsilon(1e-12));
  CHECK(b.dirichletDerivTrace[1] == doctest::Approx(2.0 * std::sqrt(2.0) * pi).epsilon(1e-12));
  CHECK(evalEigenfunction(b, 1, 0.5) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(std::abs(evalEigenfunction(b, 2, 0.5)) <= 1e-13);
  CHECK(std::abs(evalEigenfunction(b, 1, 1.0 - 1e-8)) <= 1e-6);
  for (double x : {0.1, 0.37, 0.9}) {
    const double ref = std::sqrt(2.0) * (pi * std::cos(2 * pi * x) * 2 * x - std::sin(2 * pi * x)) / (x * x);
    CHECK(evalEigenfunctionDeriv(b, 2, x) == doctest::Approx(ref).epsilon(1e-11));
  }
  CHECK_THROWS_AS(evalEigenfunction(b, 1, 0.0), Error);
  CHECK_THROWS_AS(evalEigenfunction(b, 1, 1.0), Error);
  CHECK_THROWS(evalEigenfunction(b, 4, 0.5));
}

TEST_CASE("orthonormality") {
  for (auto [a, be, m] : {std::tuple{0.0, 2.0, 0.0}, {0.5, 1.0, 0.05}, {1.0, 0.0, -1.0}}) {
    const auto b = buildBasis(makeParams(a, be, m), 12);
    double worst = 0.0;
    for (std::size_t k = 1; k <= 12; ++k)
      for (std::size_t l = 1; l <= 12; ++l) worst = std::max(worst, std::abs(gramEntry(b, k, l) - (k == l)));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("innerProductBeta") {
  const auto b = buildBasis(makeParams(0.0, 2.0, 0.0), 4);
  auto phi = [&](std::size_t k) { return [&b, k](double x) { return evalEigenfunction(b, k, x); }; };
  CHECK(innerProductBeta(phi(1), phi(1), b.params) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(innerProductBeta(phi(1), phi(2), b.params)) <= 1e-10);
  auto one = [](double) { return 1.0; };
  CHECK(innerProductBeta(one, one, b.params) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  GridFunction g;
  for (int i = 0; i <= 100; ++i) {
    g.nodes.push_back(i / 100.0);
    g.values.push_back(1.0);
  }
  CHECK(innerProductBeta(g, g, b.params) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(g(-1.0) == 1.0);
}

TEST_CASE("expand") {
  const auto bp = std::make_shared<const SpectralBasis>(buildBasis(makeParams(0.0, 2.0, 0.0), 6));
  const auto& b = *bp;
  const auto e3 = expand([&](double x) { return evalEigenfunction(b, 3, x); }, b);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(e3[k] - (k == 2)) <= 1e-9);
  const auto mix =
      expand([&](double x) { return 2.0 * evalEigenfunction(b, 1, x) - evalEigenfunction(b, 2, x); }, b);
  CHECK(mix[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(mix[1] == doctest::Approx(-1.0).epsilon(1e-10));
  for (std::size_t k = 2; k < 6; ++k) CHECK(std::abs(mix[k]) <= 1e-9);
  const auto lin = expand([](double x) { return x - 1.0; }, b);
  CHECK(lin[0] == doctest::Approx(-0.182442229611094354).epsilon(1e-10));
}

TEST_CASE("Hardy and Poincare") {
  const auto p = makeParams(0.0, 2.0, 0.0);
  CHECK(hardyResidual([](double x) { return 1.0 - x; }, [](double) { return -1.0; }, p) ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK(hardyResidual([](double x) { return 1.0 - x * x; }, {}, p) > 0.0);
  const auto b = buildBasis(p, 3);
  auto phi = [&](double x) { return evalEigenfunction(b, 1, x); };
  auto dphi = [&](double x) { return evalEigenfunctionDeriv(b, 1, x); };
  CHECK(hardyResidual(phi, dphi, p) > 0.0);
  const auto t = poincareTerms(phi, dphi, p);
  CHECK(t.weighted <= t.hardy + 1e-12);
  CHECK(t.hardy <= t.energy + 1e-12);
}

TEST_CASE("boundary vanishing near zero") {
  const auto b = buildBasis(makeParams(0.5, 1.0, 0.05), 3);
  const double e = 0.5 * (b.params.alpha + b.params.beta - 1.0);
  double first = 0.0, prev = 1e300;
  for (int j = 4; j <= 30; j += 2) {
    const double x = std::ldexp(1.0, -j);
    const double v = std::pow(x, e) * std::abs(evalEigenfunction(b, 1, x));
    CHECK(v < prev);
    if (j == 4) first = v;
    prev = v;
  }
  CHECK(prev < 0.25 * first);
}

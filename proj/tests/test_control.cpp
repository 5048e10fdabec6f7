#include <cmath>
#include <memory>

#include "doctest.h"
#include "dpc/control.hpp"

using namespace dpc;

namespace {

struct Desk {
  BasisPtr basis;
  BiorthFamily fam;
};

const Desk& desk() {
  static const Desk d = [] {
    auto b = std::make_shared<const SpectralBasis>(buildBasis(makeParams(0.0, 2.0, 0.0), 30));
    return Desk{b, buildBiorthFamily(b, 1.0, 0.5, 6)};
  }();
  return d;
}

}  // namespace

TEST_CASE("synthesizeControl") {
  const auto& [b, fam] = desk();
  const BoundaryConfig cfg{BoundarySide::LeftNeumann};
  const auto zero = synthesizeControl(CoeffVector::zeros(b), fam, cfg);
  for (double v : zero.values) CHECK(v == 0.0);

  const auto e1 = CoeffVector::unit(b, 1), e2 = CoeffVector::unit(b, 2);
  auto sum = e1;
  sum.coeffs[1] = 1.0;
  const auto f1 = synthesizeControl(e1, fam, cfg), f2 = synthesizeControl(e2, fam, cfg),
             fs = synthesizeControl(sum, fam, cfg);
  double scale = 0.0;
  for (double v : fs.values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < fs.values.size(); ++i)
    CHECK(std::abs(fs.values[i] - f1.values[i] - f2.values[i]) <= 1e-12 * scale);
  CHECK(f1.coeffRep[0] == doctest::Approx(std::exp(-b->lambda(1)) / cfg.traceCoeff(*b, 1)).epsilon(1e-14));
}

TEST_CASE("null controllability on desk parameters") {
  const auto& [b, fam] = desk();
  for (auto side : {BoundarySide::LeftNeumann, BoundarySide::RightDirichlet}) {
    const BoundaryConfig cfg{side};
    for (const auto& u : defaultProbes(b, 5, 1, 7)) {
      const auto f = synthesizeControl(u, fam, cfg);
      CHECK(verifyNullControl(u, f, cfg, cfg.defaultSobolev(*b)) <= 1e-6);
    }
  }
  const BoundaryConfig cfg{BoundarySide::LeftNeumann};
  const auto e1 = CoeffVector::unit(b, 1);
  CHECK(verifyNullControl(e1, zeroSignal(1.0, 65), cfg, 0.0) ==
        doctest::Approx(std::exp(-b->lambda(1))).epsilon(1e-14));
}

TEST_CASE("l2Norm") {
  auto f = zeroSignal(2.0, 101);
  for (std::size_t i = 0; i < f.grid.size(); ++i) f.values[i] = f.grid[i];
  CHECK(l2Norm(f) == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("bound expressions") {
  const auto p = makeParams(0.0, 2.0, 0.0);
  const BoundaryConfig ln{BoundarySide::LeftNeumann}, rd{BoundarySide::RightDirichlet};
  CHECK(boundFactorM(p, 1.0, 0.5) == doctest::Approx(7117.10908635193972).epsilon(1e-13));
  CHECK(upperBoundExpr(p, 1.0, 0.5, ln) == doctest::Approx(51.1854183797351071).epsilon(1e-13));
  CHECK(upperBoundExpr(p, 1.0, 0.5, rd) == doctest::Approx(413.078658862198569).epsilon(1e-13));
  CHECK(lowerBoundExpr(p, 1.0, ln) == doctest::Approx(1.80180298515236207e-13).epsilon(1e-12));
  CHECK(lowerBoundExpr(p, 1.0, rd) == doctest::Approx(2.54813421832679885e-13).epsilon(1e-12));
  const auto c = makeParams(1.0, 0.0, -1.0);
  const BoundaryConfig cl{BoundarySide::CriticalLeft};
  CHECK(upperBoundExpr(c, 1.0, 0.5, cl) == doctest::Approx(90028021651.6147469).epsilon(1e-12));
  CHECK(lowerBoundExpr(c, 1.0, cl) == doctest::Approx(2.11050046741286535e-7).epsilon(1e-12));

  CHECK(upperBoundExpr(p, 1.0, 0.5, ln, 3.0) == doctest::Approx(3.0 * upperBoundExpr(p, 1.0, 0.5, ln)));
  double prevU = 1e300, prevR = 1e300;
  for (double T : {2.0, 4.0, 8.0, 16.0}) {
    const double u = upperBoundExpr(p, T, 0.5, ln), l = lowerBoundExpr(p, T, ln);
    CHECK(u > 0.0);
    CHECK(l > 0.0);
    CHECK(u < prevU);
    CHECK(l / u < prevR);
    prevU = u;
    prevR = l / u;
  }
  CHECK(upperBoundExpr(p, 1.0, 0.999, ln) > 1e3 * upperBoundExpr(p, 1.0, 0.5, ln));

  const double d = 0.5 * p.kappa * p.kappa * std::pow(buildBasis(p, 2).table.zeros[1], 2);
  CHECK(lowerBoundGeneral(p, 1.0, d) == doctest::Approx(lowerBoundExpr(p, 1.0, ln)).epsilon(1e-12));
}

TEST_CASE("estimateCost") {
  const auto& [b, fam] = desk();
  const BoundaryConfig cfg{BoundarySide::LeftNeumann};
  const std::vector<CoeffVector> single{CoeffVector::unit(b, 1)};
  const auto r1 = estimateCost(*b, fam, cfg, single);
  const auto f = synthesizeControl(single[0], fam, cfg);
  CHECK(r1.estimatedCost == doctest::Approx(l2Norm(f)).epsilon(1e-14));
  CHECK(r1.estimatedCost == doctest::Approx(0.0055243019720125587).epsilon(1e-8));
  CHECK(r1.calibration.upToConstant);
  CHECK(r1.label == "moment-method cost");

  std::vector<CoeffVector> five;
  for (std::size_t k = 1; k <= 5; ++k) five.push_back(CoeffVector::unit(b, k));
  CHECK(estimateCost(*b, fam, cfg, five).estimatedCost >= r1.estimatedCost);

  auto scaled = single;
  scaled[0].coeffs[0] = 4.0;
  CHECK(estimateCost(*b, fam, cfg, scaled).estimatedCost == doctest::Approx(r1.estimatedCost).epsilon(1e-13));

  double prev = r1.estimatedCost;
  for (double T : {2.0, 4.0}) {
    const auto famT = buildBiorthFamily(b, T, 0.5, 6);
    const double c = estimateCost(*b, famT, cfg, single).estimatedCost;
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("defaultProbes") {
  const auto& b = desk().basis;
  const auto p = defaultProbes(b, 5, 2, 42);
  CHECK(p.size() == 7);
  for (const auto& u : p) CHECK(sobolevNorm(u, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  const auto q = defaultProbes(b, 5, 2, 42);
  CHECK(p.back().coeffs == q.back().coeffs);
  for (std::size_t k = 5; k < b->N; ++k) CHECK(p.back().coeffs[k] == 0.0);
}

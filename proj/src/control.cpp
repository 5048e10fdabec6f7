#include "dpc/control.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "dpc/errors.hpp"
#include "dpc/kernels.hpp"

namespace dpc {

namespace {

void checkSameBasis(const CoeffVector& u0, const BiorthFamily& fam) {
  if (!u0.basis || !fam.basis) throw Error(ErrorCode::DomainError, "missing basis");
  const auto& a = *u0.basis;
  const auto& b = *fam.basis;
  if (u0.basis != fam.basis &&
      (a.N != b.N || a.params.alpha != b.params.alpha || a.params.beta != b.params.beta || a.params.mu != b.params.mu))
    throw Error(ErrorCode::DomainError, "initial datum and family use different bases");
}

}  // namespace

ControlSignal synthesizeControl(const CoeffVector& u0, const BiorthFamily& fam, const BoundaryConfig& cfg) {
  checkSameBasis(u0, fam);
  const auto& b = *fam.basis;
  const double T = fam.mult.T;
  ControlSignal f;
  f.T = T;
  f.grid = fam.timeGrid;
  f.values.assign(f.grid.size(), 0.0);
  f.moments = fam.moments;
  for (std::size_t k = 1; k <= fam.K; ++k) {
    const double a = u0.coeffs[k - 1];
    const double tr = cfg.traceCoeff(b, k);
    const double lk = b.lambdas[k - 1];
    f.coeffRep.push_back(a * std::exp(-lk * T) / tr);
    const double cs = a / tr * std::exp(-lk * T + fam.logScale[k - 1]);
    f.coeffScaled.push_back(cs);
    if (cs != 0.0) kernels::axpy(cs, fam.psiScaled[k - 1].data(), f.values.data(), f.values.size());
  }
  return f;
}

double verifyNullControl(const CoeffVector& u0, const ControlSignal& f, const BoundaryConfig& cfg, double s) {
  if (!u0.basis) throw Error(ErrorCode::DomainError, "missing basis");
  if (!f.moments || f.coeffScaled.empty()) return sobolevNorm(weakSolution(u0, f, f.T, cfg), s);
  const auto& b = *u0.basis;
  const auto& mt = *f.moments;
  if (mt.N != b.N) throw Error(ErrorCode::DomainError, "moment table does not match the basis");
  CoeffVector r = u0;
  for (std::size_t l = 1; l <= b.N; ++l) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= f.coeffScaled.size(); ++k) acc += f.coeffScaled[k - 1] * mt.scaledAt(k, l);
    r.coeffs[l - 1] = std::exp(-b.lambdas[l - 1] * f.T) * u0.coeffs[l - 1] - cfg.traceCoeff(b, l) * acc;
  }
  return sobolevNorm(r, s);
}

double l2Norm(const ControlSignal& f) {
  const std::size_t n = f.values.size();
  if (n < 2) return 0.0;
  const double h = f.grid[1] - f.grid[0];
  double acc = 0.0;
  if (n % 2 == 1 && n >= 3) {
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * f.values[i] * f.values[i];
    }
    acc *= h / 3.0;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      acc += w * f.values[i] * f.values[i];
    }
    acc *= h;
  }
  return std::sqrt(acc);
}

double boundFactorM(const ProblemParams& p, double T, double delta) {
  if (!(delta > 0.0 && delta < 1.0) || !(T > 0.0)) throw Error(ErrorCode::DomainError, "need T > 0, 0 < delta < 1");
  const double k = p.kappa;
  const double j1 = besselZeros(p.nu, 1).zeros[0];
  const double q = (1.0 - delta) * k * k * T;
  return (1.0 + 1.0 / q) * (std::exp(1.0 / (std::sqrt(2.0) * k)) + std::exp(3.0 / q) / (delta * delta * delta)) *
         std::exp(-std::pow(1.0 - delta, 1.5) * std::pow(T, 1.5) / (8.0 * std::sqrt(1.0 + T)) * k * k * k * j1 * j1);
}

namespace {

void checkRegime(const ProblemParams& p, const BoundaryConfig& cfg) {
  const bool crit = cfg.side == BoundarySide::CriticalLeft;
  if (crit != (p.regime == Regime::Critical))
    throw Error(ErrorCode::DomainError, "boundary configuration does not match the parameter regime");
}

}  // namespace

double upperBoundExpr(const ProblemParams& p, double T, double delta, const BoundaryConfig& cfg, double c) {
  checkRegime(p, cfg);
  const double k = p.kappa, nu = p.nu;
  const double j1 = besselZeros(nu, 1).zeros[0];
  const double base = c * boundFactorM(p, T, delta) * std::sqrt(T);
  switch (cfg.side) {
    case BoundarySide::LeftNeumann:
      return base / std::sqrt(k) * std::exp(-0.5 * T * k * k * j1 * j1);
    case BoundarySide::RightDirichlet: {
      const double e = 2.0 * nu + 1.0;
      return base / (std::pow(2.0 * k, nu) * gammaFn(nu + 1.0)) * std::pow(e / T, e / 4.0) * std::exp(-e / 4.0) *
             std::exp(-0.25 * T * k * k * j1 * j1);
    }
    case BoundarySide::CriticalLeft:
      return base / (std::sqrt(k) * std::sqrt(-p.mu)) * std::exp(-0.5 * T * k * k * j1 * j1);
  }
  return 0.0;
}

double lowerBoundExpr(const ProblemParams& p, double T, const BoundaryConfig& cfg, double c) {
  checkRegime(p, cfg);
  if (!(T > 0.0)) throw Error(ErrorCode::DomainError, "need T > 0");
  const double k = p.kappa, nu = p.nu;
  const auto z = besselZeros(nu, 2);
  const double j1 = z.zeros[0], j2 = z.zeros[1];
  const double E = std::exp((0.5 - std::log(2.0) / std::numbers::pi) * j2) *
                   std::exp(-(j1 * j1 + 0.5 * j2 * j2) * k * k * T);
  const double lead = std::exp(nu * std::log(2.0) + std::lgamma(nu + 1.0) - nu * std::log(j1)) * std::abs(z.derivs[0]);
  switch (cfg.side) {
    case BoundarySide::LeftNeumann: return c * lead * E / std::sqrt(2.0 * T * k);
    case BoundarySide::RightDirichlet: return c * E / (std::sqrt(T) * std::pow(k, 1.5) * j1);
    case BoundarySide::CriticalLeft: return c * lead * E / (std::sqrt(2.0 * T * k) * std::sqrt(-p.mu));
  }
  return 0.0;
}

double lowerBoundGeneral(const ProblemParams& p, double T, double d, double c) {
  if (!(d > 0.0)) throw Error(ErrorCode::DomainError, "need d > 0");
  const double k = p.kappa, nu = p.nu;
  const auto z = besselZeros(nu, 2);
  const double j1 = z.zeros[0], j2 = z.zeros[1];
  const double r = std::sqrt(2.0 * d);
  const double A = 2.0 * r / (std::numbers::pi * k) * std::atan(r / (k * j2)) -
                   j2 / std::numbers::pi * std::log1p(2.0 * d / (k * j2 * k * j2));
  const double lam1 = k * k * j1 * j1;
  const double logh = 0.5 * std::log(2.0 * T * k) + nu * std::log(j1) - nu * std::log(2.0) - std::lgamma(nu + 1.0) -
                      std::log(std::abs(z.derivs[0]));
  return c * std::exp(A - (lam1 + d) * T - logh);
}

CostReport estimateCost(const SpectralBasis& basis, const BiorthFamily& fam, const BoundaryConfig& cfg,
                        const std::vector<CoeffVector>& probes, const Calibration& cal) {
  CostReport rep;
  rep.params = basis.params;
  rep.T = fam.mult.T;
  rep.delta = fam.mult.delta;
  rep.calibration = cal;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    CoeffVector u = probes[i];
    const double n0 = sobolevNorm(u, 0.0);
    if (n0 == 0.0) continue;
    for (double& a : u.coeffs) a /= n0;
    const double c = l2Norm(synthesizeControl(u, fam, cfg));
    if (c > rep.estimatedCost) {
      rep.estimatedCost = c;
      rep.argmaxProbe = i;
    }
  }
  rep.upperExpr = upperBoundExpr(basis.params, rep.T, rep.delta, cfg, cal.cUpper);
  rep.lowerExpr = lowerBoundExpr(basis.params, rep.T, cfg, cal.cLower);
  return rep;
}

std::vector<CoeffVector> defaultProbes(BasisPtr b, std::size_t modes, std::size_t mixtures, std::uint64_t seed) {
  modes = std::min(modes, b->N);
  std::vector<CoeffVector> out;
  for (std::size_t k = 1; k <= modes; ++k) out.push_back(CoeffVector::unit(b, k));
  std::mt19937_64 gen(seed);
  for (std::size_t m = 0; m < mixtures; ++m) {
    auto v = CoeffVector::zeros(b);
    double nrm = 0.0;
    for (std::size_t k = 0; k < modes; ++k) {
      // explicit mapping keeps the stream identical across standard libraries
      v.coeffs[k] = 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
      nrm += v.coeffs[k] * v.coeffs[k];
    }
    nrm = std::sqrt(nrm);
    if (nrm > 0.0)
      for (double& a : v.coeffs) a /= nrm;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace dpc

#include "dpc/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dpc/errors.hpp"
#include "dpc/quadrature.hpp"

namespace dpc {

ProblemParams makeParams(double alpha, double beta, double mu) {
  if (!(alpha >= 0.0 && alpha < 2.0))
    throw Error(ErrorCode::AlphaRange, "alpha must lie in [0, 2)");
  if (!std::isfinite(beta) || !std::isfinite(mu)) throw Error(ErrorCode::DomainError, "non-finite parameter");
  ProblemParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.mu = mu;
  p.kappa = 0.5 * (2.0 - alpha);
  const double s = alpha + beta;
  if (std::abs(s - 1.0) <= 1e-14) {
    if (!(mu < 0.0)) throw Error(ErrorCode::CriticalMuNonnegative, "critical case needs mu < 0");
    p.regime = Regime::Critical;
    p.beta = 1.0 - alpha;
    p.nu = std::sqrt(-mu) / p.kappa;
    p.gamma = -1.0 - std::sqrt(-mu);
    return p;
  }
  if (s < 1.0) throw Error(ErrorCode::SubcriticalSum, "alpha + beta < 1 is not supported");
  const double mc = muCrit(s);
  if (!(mu < mc)) throw Error(ErrorCode::MuTooLarge, "mu must be below (alpha+beta-1)^2/4");
  p.regime = Regime::Supercritical;
  p.nu = std::sqrt(mc - mu) / p.kappa;
  p.gamma = -0.5 * (1.0 + s) - std::sqrt(mc - mu);
  return p;
}

SpectralBasis buildBasis(const ProblemParams& p, std::size_t N) {
  if (N < 1) throw Error(ErrorCode::DomainError, "basis size must be positive");
  SpectralBasis b;
  b.params = p;
  b.N = N;
  b.table = besselZeros(p.nu, N);
  const double nu = p.nu, kap = p.kappa;
  const double sq = std::sqrt(2.0 * kap);
  const double lg = std::lgamma(nu + 1.0) + nu * std::log(2.0);
  for (std::size_t k = 0; k < N; ++k) {
    const double j = b.table.zeros[k], jp = b.table.derivs[k];
    b.lambdas.push_back(kap * kap * j * j);
    b.norms.push_back(sq / std::abs(jp));
    const double o = sq * std::exp(nu * std::log(j) - lg) / std::abs(jp);
    b.neumannTrace.push_back(o);
    b.dirichletDerivTrace.push_back(std::copysign(sq * kap * j, jp));
    b.criticalTrace.push_back(-2.0 * kap * nu * o);
  }
  return b;
}

namespace {

void checkIndex(const SpectralBasis& b, std::size_t k) {
  if (k < 1 || k > b.N) throw Error(ErrorCode::DomainError, "eigenfunction index out of range");
}

}  // namespace

double evalEigenfunction(const SpectralBasis& b, std::size_t k, double x) {
  checkIndex(b, k);
  if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::DomainError, "Phi_k is evaluated on (0, 1)");
  const auto& p = b.params;
  const double ex = 0.5 * (1.0 - p.alpha - p.beta);
  return b.norms[k - 1] * std::pow(x, ex) * besselJ(p.nu, b.table.zeros[k - 1] * std::pow(x, p.kappa));
}

double evalEigenfunctionDeriv(const SpectralBasis& b, std::size_t k, double x) {
  checkIndex(b, k);
  if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::DomainError, "Phi_k is evaluated on (0, 1)");
  const auto& p = b.params;
  const double ex = 0.5 * (1.0 - p.alpha - p.beta);
  const double j = b.table.zeros[k - 1];
  const double y = std::pow(x, p.kappa);
  const auto [jv, jv1] = besselJPair(p.nu, j * y);
  const double jd = (j * y > 0.0) ? p.nu / (j * y) * jv - jv1 : 0.0;
  return b.norms[k - 1] * (ex * std::pow(x, ex - 1.0) * jv + std::pow(x, ex) * jd * j * p.kappa * y / x);
}

double GridFunction::operator()(double x) const {
  if (nodes.empty()) return 0.0;
  if (x <= nodes.front()) return values.front();
  if (x >= nodes.back()) return values.back();
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - nodes.begin());
  const double t = (x - nodes[i - 1]) / (nodes[i] - nodes[i - 1]);
  return (1.0 - t) * values[i - 1] + t * values[i];
}

double innerProductBeta(const RealFn& f, const RealFn& g, const ProblemParams& p, int panels) {
  const double kap = p.kappa;
  const double ex = (p.beta + 1.0) / kap - 1.0;
  auto h = [&](double y) {
    if (y <= 0.0 || y >= 1.0) return 0.0;
    const double x = std::pow(y, 1.0 / kap);
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    return f(x) * g(x) * std::pow(y, ex) / kap;
  };
  std::vector<double> pts;
  for (int i = 0; i <= panels; ++i) pts.push_back(static_cast<double>(i) / panels);
  return integrate(h, pts, 1e-13, 1e-15).value;
}

double innerProductBeta(const GridFunction& f, const GridFunction& g, const ProblemParams& p) {
  if (f.nodes.size() != f.values.size() || g.nodes.size() != g.values.size())
    throw Error(ErrorCode::DomainError, "grid function nodes and values differ in length");
  return innerProductBeta(RealFn(std::cref(f)), RealFn(std::cref(g)), p);
}

double gramEntry(const SpectralBasis& b, std::size_t k, std::size_t l) {
  checkIndex(b, k);
  checkIndex(b, l);
  const double jk = b.table.zeros[k - 1], jl = b.table.zeros[l - 1], nu = b.params.nu;
  const double c = b.norms[k - 1] * b.norms[l - 1] / b.params.kappa;
  auto h = [&](double y) { return y * besselJ(nu, jk * y) * besselJ(nu, jl * y); };
  const int panels = static_cast<int>(std::max(k, l)) + 2;
  std::vector<double> pts;
  for (int i = 0; i <= panels; ++i) pts.push_back(static_cast<double>(i) / panels);
  return c * integrate(h, pts, 1e-14, 1e-16).value;
}

std::vector<double> expand(const RealFn& u0, const SpectralBasis& b) {
  std::vector<double> a(b.N);
  for (std::size_t k = 1; k <= b.N; ++k) {
    const auto phi = [&b, k](double x) { return evalEigenfunction(b, k, x); };
    a[k - 1] = innerProductBeta(u0, phi, b.params, static_cast<int>(k) + 4);
  }
  return a;
}

namespace {

double fdDerivative(const RealFn& u, double x) {
  const double h = 1e-4 * std::min(x, 1.0 - x + 1e-3);
  auto v = [&](double t) { return u(std::clamp(t, 1e-300, 1.0)); };
  return (8.0 * (v(x + h) - v(x - h)) - (v(x + 2 * h) - v(x - 2 * h))) / (12.0 * h);
}

// int_0^1 g(x) dx through x = y^4, which tames x^(-c) endpoint behaviour.
double integrateUnit(const std::function<double(double)>& g) {
  auto h = [&](double y) {
    if (y <= 0.0) return 0.0;
    const double y3 = y * y * y;
    return 4.0 * y3 * g(y3 * y);
  };
  const std::array<double, 5> pts{0.0, 0.25, 0.5, 0.75, 1.0};
  return integrate(h, pts, 1e-13, 1e-15).value;
}

}  // namespace

PoincareTerms poincareTerms(const RealFn& u, const RealFn& du, const ProblemParams& p) {
  if (p.regime != Regime::Supercritical)
    throw Error(ErrorCode::DomainError, "Hardy inequality needs alpha + beta > 1");
  const double s = p.alpha + p.beta;
  const RealFn d = du ? du : RealFn([&u](double x) { return fdDerivative(u, x); });
  PoincareTerms t{};
  t.weighted = integrateUnit([&](double x) { const double v = u(x); return std::pow(x, p.beta) * v * v; });
  t.hardy = integrateUnit([&](double x) { const double v = u(x); return v * v * std::pow(x, s - 2.0); });
  t.energy = integrateUnit([&](double x) { const double v = d(x); return std::pow(x, s) * v * v; }) / muCrit(s);
  return t;
}

double hardyResidual(const RealFn& u, const RealFn& du, const ProblemParams& p) {
  const auto t = poincareTerms(u, du, p);
  const double mc = muCrit(p.alpha + p.beta);
  return mc * t.energy - mc * t.hardy;
}

}  // namespace dpc

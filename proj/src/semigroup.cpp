#include "dpc/semigroup.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dpc/errors.hpp"

namespace dpc {

double BoundaryConfig::traceCoeff(const SpectralBasis& b, std::size_t k) const {
  if (k < 1 || k > b.N) throw Error(ErrorCode::DomainError, "trace index out of range");
  double v = 0.0;
  switch (side) {
    case BoundarySide::LeftNeumann: v = b.neumannTrace[k - 1]; break;
    case BoundarySide::RightDirichlet: v = b.dirichletDerivTrace[k - 1]; break;
    case BoundarySide::CriticalLeft: v = b.criticalTrace[k - 1]; break;
  }
  if (v == 0.0 || !std::isfinite(v)) throw Error(ErrorCode::TraceVanishes, "boundary coupling is zero");
  return v;
}

double BoundaryConfig::defaultSobolev(const SpectralBasis& b) const {
  return side == BoundarySide::RightDirichlet ? 1.0 : b.params.nu + 1.0;
}

const char* sideName(BoundarySide s) noexcept {
  switch (s) {
    case BoundarySide::LeftNeumann: return "left_neumann";
    case BoundarySide::RightDirichlet: return "right_dirichlet";
    case BoundarySide::CriticalLeft: return "critical_left";
  }
  return "left_neumann";
}

ControlSignal zeroSignal(double T, std::size_t nodes) {
  ControlSignal f;
  f.T = T;
  for (std::size_t i = 0; i < nodes; ++i) f.grid.push_back(T * static_cast<double>(i) / (nodes - 1));
  f.values.assign(nodes, 0.0);
  return f;
}

CoeffVector applySemigroup(const CoeffVector& u, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::DomainError, "semigroup time must be nonnegative");
  CoeffVector r = u;
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) r.coeffs[k] *= std::exp(-u.basis->lambdas[k] * t);
  return r;
}

double sobolevNorm(const CoeffVector& u, double s) {
  double acc = 0.0;
  for (std::size_t k = 0; k < u.coeffs.size(); ++k)
    acc += u.coeffs[k] * u.coeffs[k] * std::pow(u.basis->lambdas[k], s);
  return std::sqrt(acc);
}

namespace {

// m_j = int_0^1 w^j e^{-c w} dw, j = 0..3
std::array<double, 4> expMoments(double c) {
  std::array<double, 4> m{};
  if (c < 2.0) {
    for (int j = 0; j < 4; ++j) {
      double term = 1.0, s = 0.0;
      for (int n = 0; n < 60; ++n) {
        const double t = term / (j + n + 1);
        s += t;
        if (std::abs(t) < 1e-18 * std::abs(s)) break;
        term *= -c / (n + 1);
      }
      m[j] = s;
    }
  } else {
    const double e = std::exp(-c);
    m[0] = -std::expm1(-c) / c;
    for (int j = 1; j < 4; ++j) m[j] = (j * m[j - 1] - e) / c;
  }
  return m;
}

}  // namespace

double dampedIntegral(const ControlSignal& f, double tau, double lambda) {
  const std::size_t n = f.grid.size();
  if (n < 2 || f.values.size() != n) throw Error(ErrorCode::GridMismatch, "control grid is empty or ragged");
  const double h = f.grid[1] - f.grid[0];
  const double pos = tau / h;
  const double ri = std::round(pos);
  if (!(tau > 0.0) || std::abs(pos - ri) > 1e-9 * std::max(1.0, pos) || ri > static_cast<double>(n - 1))
    throw Error(ErrorCode::GridMismatch, "tau must be a node of the control grid");
  const std::size_t m = static_cast<std::size_t>(ri);

  // w = 1 - v, so int_0^1 v^j e^{-c(1-v)} dv = sum_i C(j,i)(-1)^i m_i
  const auto mm = expMoments(lambda * h);
  const std::array<double, 4> vm{mm[0], mm[0] - mm[1], mm[0] - 2 * mm[1] + mm[2],
                                 mm[0] - 3 * mm[1] + 3 * mm[2] - mm[3]};
  const std::size_t width = std::min<std::size_t>(4, m + 1);

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t start = i >= 1 ? i - 1 : 0;
    if (start + width > m + 1) start = m + 1 - width;
    double acc = 0.0;
    for (std::size_t a = 0; a < width; ++a) {
      // Lagrange basis for node start+a, in the local variable v = (t - t_i)/h
      std::array<double, 4> poly{1.0, 0.0, 0.0, 0.0};
      double denom = 1.0;
      const double va = static_cast<double>(start + a) - static_cast<double>(i);
      for (std::size_t b = 0; b < width; ++b) {
        if (b == a) continue;
        const double vb = static_cast<double>(start + b) - static_cast<double>(i);
        for (int d = 3; d >= 1; --d) poly[d] = poly[d - 1] - vb * poly[d];
        poly[0] *= -vb;
        denom *= va - vb;
      }
      double wgt = 0.0;
      for (int d = 0; d < 4; ++d) wgt += poly[d] * vm[d];
      acc += f.values[start + a] * wgt / denom;
    }
    total += acc * std::exp(-lambda * (tau - f.grid[i + 1]));
  }
  return total * h;
}

CoeffVector weakSolution(const CoeffVector& u0, const ControlSignal& f, double tau, const BoundaryConfig& cfg) {
  if (!u0.basis) throw Error(ErrorCode::DomainError, "coefficient vector has no basis");
  if (!(tau > 0.0) || tau > f.T * (1.0 + 1e-12))
    throw Error(ErrorCode::GridMismatch, "tau outside the control horizon");
  const auto& b = *u0.basis;
  CoeffVector r = u0;
  const bool forced = std::any_of(f.values.begin(), f.values.end(), [](double v) { return v != 0.0; });
  for (std::size_t k = 1; k <= b.N; ++k) {
    const double lam = b.lambdas[k - 1];
    double v = std::exp(-lam * tau) * u0.coeffs[k - 1];
    if (forced) v -= cfg.traceCoeff(b, k) * dampedIntegral(f, tau, lam);
    r.coeffs[k - 1] = v;
  }
  return r;
}

}  // namespace dpc

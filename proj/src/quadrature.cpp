#include "dpc/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <array>
#include <limits>
#include <queue>
#include <tuple>
#include <cmath>
#include <cstdio>
#include <string>

#include "dpc/errors.hpp"

namespace dpc {
namespace {

std::string fmtG(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

namespace {

using cplx = std::complex<double>;

double mag(double v) { return std::abs(v); }
double mag(cplx v) { return std::abs(v); }

template <class V>
struct Piece {
  double a = 0.0, b = 0.0;
  V value{};
  double err = 0.0, l1 = 0.0;
  bool operator<(const Piece& o) const { return err < o.err; }
};

// One Kronrod panel with the usual damped error estimate: |K - G| overstates
// the error of K by orders of magnitude on resolved integrands.
template <class V>
Piece<V> panel(const std::function<V(double)>& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  using G = boost::math::quadrature::gauss<double, 15>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<V, 31> fv;
  fv[0] = f(c);
  for (std::size_t i = 1; i < x.size(); ++i) {
    fv[2 * i - 1] = f(c - h * x[i]);
    fv[2 * i] = f(c + h * x[i]);
  }
  V k = fv[0] * wk[0], g = fv[0] * wg[0];
  double l1 = mag(fv[0]) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const V s = fv[2 * i - 1] + fv[2 * i];
    k += s * wk[i];
    l1 += (mag(fv[2 * i - 1]) + mag(fv[2 * i])) * wk[i];
    if (i % 2 == 0) g += s * wg[i / 2];
  }
  const V mean = k * 0.5;
  double asc = mag(fv[0] - mean) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i)
    asc += (mag(fv[2 * i - 1] - mean) + mag(fv[2 * i] - mean)) * wk[i];
  Piece<V> p{a, b, k * h, mag(k - g) * std::abs(h), l1 * std::abs(h)};
  asc *= std::abs(h);
  if (asc > 0.0 && p.err > 0.0) p.err = asc * std::min(1.0, std::pow(200.0 * p.err / asc, 1.5));
  p.err = std::max(p.err, 50.0 * std::numeric_limits<double>::epsilon() * p.l1);
  return p;
}

template <class V>
std::pair<V, double> adapt(const std::function<V(double)>& f, std::span<const double> pts, double relTol,
                           double absTol, unsigned maxIntervals) {
  std::priority_queue<Piece<V>> q;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i + 1] != pts[i]) q.push(panel(f, pts[i], pts[i + 1]));
  auto totals = [&q] {
    V v{};
    double e = 0.0, l1 = 0.0;
    auto copy = q;
    for (; !copy.empty(); copy.pop()) {
      v += copy.top().value;
      e += copy.top().err;
      l1 += copy.top().l1;
    }
    return std::tuple{v, e, l1};
  };
  auto [v, e, l1] = totals();
  // Requests below the round-off floor of the panel sums are lifted to it.
  relTol = std::max(relTol, 1e-13);
  auto target = [&](V val, double norm) { return std::max({absTol, relTol * mag(val), 1e-13 * norm}); };
  unsigned splits = 0;
  while (!q.empty() && e > target(v, l1)) {
    if (splits++ >= maxIntervals) break;
    const Piece<V> worst = q.top();
    q.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) break;
    const Piece<V> left = panel(f, worst.a, mid), right = panel(f, mid, worst.b);
    v += left.value + right.value - worst.value;
    e += left.err + right.err - worst.err;
    l1 += left.l1 + right.l1 - worst.l1;
    q.push(left);
    q.push(right);
    if (splits % 64 == 0) std::tie(v, e, l1) = totals();
  }
  std::tie(v, e, l1) = totals();
  if (!std::isfinite(mag(v)))
    throw Error(ErrorCode::QuadratureNonConvergence, "integrand produced a non-finite value");
  if (e > target(v, l1))
    throw Error(ErrorCode::QuadratureNonConvergence,
                "adaptive refinement exceeded its budget (error " + fmtG(e) + " vs target " + fmtG(target(v, l1)) + ")");
  return {v, e};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double relTol, double absTol,
                     unsigned maxIntervals) {
  const std::array<double, 2> pts{a, b};
  return integrate(f, pts, relTol, absTol, maxIntervals);
}

QuadResult integrate(const std::function<double(double)>& f, std::span<const double> pts, double relTol,
                     double absTol, unsigned maxIntervals) {
  const auto [v, e] = adapt<double>(f, pts, relTol, absTol, maxIntervals);
  return {v, e};
}

ComplexQuadResult integrateComplex(const std::function<cplx(double)>& f, std::span<const double> pts, double relTol,
                                   double absTol, unsigned maxIntervals) {
  const auto [v, e] = adapt<cplx>(f, pts, relTol, absTol, maxIntervals);
  return {v, e};
}

namespace {

template <int N>
Rule makeRule() {
  using G = boost::math::quadrature::gauss<double, N>;
  Rule r;
  const auto& xa = G::abscissa();
  const auto& wa = G::weights();
  for (std::size_t i = 0; i < xa.size(); ++i) {
    if (xa[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(wa[i]);
    } else {
      r.x.push_back(-xa[i]);
      r.w.push_back(wa[i]);
      r.x.push_back(xa[i]);
      r.w.push_back(wa[i]);
    }
  }
  return r;
}

}  // namespace

const Rule& gaussLegendre(int n) {
  static const Rule r8 = makeRule<8>();
  static const Rule r16 = makeRule<16>();
  static const Rule r32 = makeRule<32>();
  switch (n) {
    case 8: return r8;
    case 16: return r16;
    case 32: return r32;
    default: throw Error(ErrorCode::DomainError, "gaussLegendre: unsupported order");
  }
}

}  // namespace dpc

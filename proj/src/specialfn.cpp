#include "dpc/specialfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dpc/errors.hpp"

namespace dpc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// Power series, good when the terms decrease from the start.
double seriesJ(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double q = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 500; ++m) {
    term *= q / (m * (m + nu));
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return sum * std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
}

// Hankel asymptotic expansion, x large compared with nu^2.
BesselPair hankelPair(double nu, double x) {
  auto one = [x](double n) {
    const double m = 4.0 * n * n;
    double p = 1.0, q = 0.0, term = 1.0, prev = 1e300;
    for (int k = 1; k < 60; ++k) {
      const double odd = 2.0 * k - 1.0;
      term *= (m - odd * odd) / (k * 8.0 * x);
      const double mag = std::abs(term);
      if (mag > prev) break;
      prev = mag;
      // sign pattern: q gets +a1, p gets -a2, q gets -a3, p gets +a4, ...
      switch (k % 4) {
        case 1: q += term; break;
        case 2: p -= term; break;
        case 3: q -= term; break;
        case 0: p += term; break;
      }
      if (mag < 1e-17) break;
    }
    const double chi = x - (0.5 * n + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
  };
  return {one(nu), one(nu + 1.0)};
}

// Steed's method: CF1 for J'/J, downward recurrence, CF2 for p + iq.
BesselPair steedPair(double nu, double x) {
  const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
  const double xmu = nu - nl;
  const double xi = 1.0 / x, xi2 = 2.0 * xi, w = xi2 / kPi;

  int isign = 1;
  double h = nu * xi;
  if (h < kTiny) h = kTiny;
  double b = xi2 * nu, d = 0.0, c = h;
  const int maxit = 10000 + static_cast<int>(4.0 * x);
  int i = 1;
  for (; i <= maxit; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) < kEps) break;
  }
  if (i > maxit) throw Error(ErrorCode::ConvergenceFailure, "besselJ: CF1 did not converge");

  double rjl = isign * 1e-30, rjpl = h * rjl;
  double rjl1 = rjl, rjp1 = rjpl;
  double fact = nu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    const double t = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * t - rjl;
    rjl = t;
    if (std::abs(rjl) > 1e250) {
      rjl *= 1e-250; rjpl *= 1e-250; rjl1 *= 1e-250; rjp1 *= 1e-250;
    }
  }
  if (rjl == 0.0) rjl = kEps;
  const double f = rjpl / rjl;

  double a = 0.25 - xmu * xmu;
  double p = -0.5 * xi, q = 1.0;
  const double br = 2.0 * x;
  double bi = 2.0;
  fact = a * xi / (p * p + q * q);
  double cr = br + q * fact, ci = bi + p * fact;
  double den = br * br + bi * bi;
  double dr = br / den, di = -bi / den;
  double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
  double t = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = t;
  for (i = 2; i <= maxit; ++i) {
    a += 2.0 * (i - 1);
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
    fact = a / (cr * cr + ci * ci);
    cr = br + cr * fact;
    ci = bi - ci * fact;
    if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
    den = dr * dr + di * di;
    dr /= den;
    di /= -den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    t = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = t;
    if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
  }
  if (i > maxit) throw Error(ErrorCode::ConvergenceFailure, "besselJ: CF2 did not converge");

  const double gam = (p - f) / q;
  double rjmu = std::sqrt(w / ((p - f) * gam + q));
  rjmu = std::copysign(rjmu, rjl);
  const double scale = rjmu / rjl;
  const double jnu = rjl1 * scale;
  const double jpnu = rjp1 * scale;
  return {jnu, nu * xi * jnu - jpnu};
}

}  // namespace

BesselPair besselJPair(double nu, double x) {
  if (!(nu >= 0.0) || !(x >= 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::DomainError, "besselJ requires nu >= 0 and finite x >= 0");
  if (x < 2.0 || 0.25 * x * x < nu + 1.0) return {seriesJ(nu, x), seriesJ(nu + 1.0, x)};
  if (x >= 1000.0 && x > 10.0 * (nu + 1.0) * (nu + 1.0)) return hankelPair(nu, x);
  return steedPair(nu, x);
}

double besselJ(double nu, double x) {
  if (!(nu >= 0.0) || !(x >= 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::DomainError, "besselJ requires nu >= 0 and finite x >= 0");
  if (x < 2.0 || 0.25 * x * x < nu + 1.0) return seriesJ(nu, x);
  return besselJPair(nu, x).j;
}

double besselJprime(double nu, double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "besselJprime requires x > 0");
  const auto [j, jp1] = besselJPair(nu, x);
  return nu / x * j - jp1;
}

double mcmahonZero(double nu, double k) {
  const double b = (k + 0.5 * nu - 0.25) * kPi;
  const double m = 4.0 * nu * nu;
  const double e = 8.0 * b;
  return b - (m - 1.0) / e - 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * e * e * e) -
         32.0 * (m - 1.0) * (83.0 * m * m - 982.0 * m + 3779.0) / (15.0 * std::pow(e, 5));
}

ZeroTable besselZeros(double nu, std::size_t K) {
  if (K < 1) throw Error(ErrorCode::DomainError, "besselZeros requires K >= 1");
  if (!(nu >= 0.0)) throw Error(ErrorCode::DomainError, "besselZeros requires nu >= 0");
  ZeroTable t;
  t.nu = nu;
  t.zeros.reserve(K);
  t.derivs.reserve(K);

  // Consecutive zeros of J_nu (nu >= 0) are more than 3 apart, so a unit
  // scan step never straddles two of them.
  double lo = std::max(nu, 1e-3);
  double flo = besselJ(nu, lo);
  for (std::size_t k = 1; k <= K; ++k) {
    double hi = lo + 1.0, fhi = besselJ(nu, hi);
    int guard = 0;
    while (std::signbit(flo) == std::signbit(fhi) && fhi != 0.0) {
      lo = hi; flo = fhi;
      hi = lo + 1.0; fhi = besselJ(nu, hi);
      if (++guard > 100000) throw Error(ErrorCode::ConvergenceFailure, "besselZeros: bracket scan");
    }
    double a = lo, b = hi, fa = flo;
    double x = mcmahonZero(nu, static_cast<double>(k));
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    bool done = false;
    for (int it = 0; it < 200; ++it) {
      const auto [j, jp1] = besselJPair(nu, x);
      if (j == 0.0) { done = true; break; }
      if (std::signbit(j) == std::signbit(fa)) { a = x; fa = j; } else { b = x; }
      const double jp = nu / x * j - jp1;
      double xn = x - j / jp;
      if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
      const double dx = std::abs(xn - x);
      x = xn;
      if (dx <= 4.0 * std::numeric_limits<double>::epsilon() * x || b - a < 1e-15 * x) {
        done = true;
        break;
      }
    }
    if (!done) throw Error(ErrorCode::ConvergenceFailure, "besselZeros: Newton iteration");
    t.zeros.push_back(x);
    t.derivs.push_back(besselJprime(nu, x));
    lo = x + 1.0;
    flo = besselJ(nu, lo);
  }
  return t;
}

double gammaFn(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "gammaFn requires x > 0");
  return std::tgamma(x);
}

}  // namespace dpc

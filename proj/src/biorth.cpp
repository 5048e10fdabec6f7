#include "dpc/biorth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "dpc/errors.hpp"
#include "dpc/kernels.hpp"
#include "dpc/parallel.hpp"
#include "dpc/quadrature.hpp"

namespace dpc {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// log(1 + w) without the cancellation of forming 1 + w for small |w|
cplx log1pc(cplx w) {
  const double re = w.real(), im = w.imag();
  return {0.5 * std::log1p(2.0 * re + re * re + im * im), std::atan2(im, 1.0 + re)};
}

cplx integrateC(const std::function<cplx(double)>& f, std::span<const double> pts, double tol) {
  return integrateComplex(f, pts, tol).value;
}

}  // namespace

MultiplierParams makeMultiplier(const ProblemParams& p, double T, double delta) {
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorCode::DomainError, "horizon T must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::DomainError, "delta must lie in (0, 1)");
  MultiplierParams m;
  m.T = T;
  m.delta = delta;
  m.a = 0.5 * T * (1.0 - delta);
  m.theta = (1.0 + delta) * (1.0 + delta) / (p.kappa * p.kappa * T * (1.0 - delta));
  return m;
}

// ---------------------------------------------------------------- product

WeierstrassProduct::WeierstrassProduct(const SpectralBasis& b, std::size_t P)
    : nu_(b.params.nu), kappa_(b.params.kappa) {
  const auto want = std::max({P, b.N, std::size_t{64}, static_cast<std::size_t>(std::ceil(16.0 * nu_ * nu_))});
  zeros_ = b.table.size() >= want ? b.table : besselZeros(nu_, want);
  for (std::size_t k = 0; k < want; ++k) lam_.push_back(kappa_ * kappa_ * zeros_.zeros[k] * zeros_.zeros[k]);
}

cplx WeierstrassProduct::term(cplx z, double kk) const {
  const double j = mcmahonZero(nu_, kk);
  return log1pc(kI * z / (kappa_ * kappa_ * j * j));
}

cplx WeierstrassProduct::tail(cplx z) const {
  const double X = static_cast<double>(lam_.size()) + 0.5;
  auto g = [&](double k) { return term(z, k); };
  auto h = [&](double u) -> cplx {
    if (u <= 0.0) return kI * z / (kappa_ * kappa_ * kPi * kPi * X);
    return g(X / u) * (X / (u * u));
  };
  const std::array<double, 4> pts{0.0, 0.25, 0.6, 1.0};
  const cplx integral = integrateC(h, pts, 1e-13);
  const cplx d1 = (8.0 * (g(X + 1) - g(X - 1)) - (g(X + 2) - g(X - 2))) / 12.0;
  const cplx d3 = (g(X + 2) - 2.0 * g(X + 1) + 2.0 * g(X - 1) - g(X - 2)) / 2.0;
  return integral + d1 / 24.0 - 7.0 * d3 / 5760.0;
}

cplx WeierstrassProduct::logValue(cplx z) const { return logExcluding(z, 0); }

cplx WeierstrassProduct::logExcluding(cplx z, std::size_t k) const {
  if (!(std::abs(z) <= 1e10 * lam_.back()))
    throw Error(ErrorCode::AccuracyBudgetExceeded, "argument too large for the product truncation");
  cplx s = tail(z);
  for (std::size_t m = 0; m < lam_.size(); ++m) {
    if (m + 1 == k) continue;
    s += log1pc(kI * z / lam_[m]);
  }
  return s;
}

cplx WeierstrassProduct::value(cplx z) const {
  for (double l : lam_)
    if (1.0 + kI * z / l == cplx{}) return {};
  return std::exp(logValue(z));
}

double WeierstrassProduct::primeMagnitude(std::size_t k) const {
  const double j = zeros_.zeros.at(k - 1);
  return std::exp(std::lgamma(nu_ + 1.0) + nu_ * std::log(2.0) - nu_ * std::log(j)) /
         (2.0 * kappa_ * kappa_ * j) * std::abs(zeros_.derivs.at(k - 1));
}

cplx lambdaProduct(const SpectralBasis& b, cplx z) { return WeierstrassProduct(b).value(z); }

double lambdaPrimeAt(const SpectralBasis& b, std::size_t k) {
  if (k < 1 || k > b.N) throw Error(ErrorCode::DomainError, "index out of range");
  const double j = b.table.zeros[k - 1], nu = b.params.nu, kap = b.params.kappa;
  return std::exp(std::lgamma(nu + 1.0) + nu * std::log(2.0) - nu * std::log(j)) / (2.0 * kap * kap * j) *
         std::abs(b.table.derivs[k - 1]);
}

// ---------------------------------------------------------------- mollifier

Mollifier::Mollifier(const MultiplierParams& m) : m_(m) {
  const double th = m.theta;
  auto f = [th](double t) { return std::exp(-th * t * t / (1.0 - t * t)); };
  const std::array<double, 5> pts{-1.0, -0.5, 0.0, 0.5, 1.0};
  logC_ = th - std::log(integrate(f, pts, 1e-15).value);
}

double Mollifier::onReal(double x) const {
  const double om = m_.a * std::abs(x), th = m_.theta, lc = logC_;
  if (om < 20.0) {
    auto f = [&](double t) { return std::exp(lc - th / (1.0 - t * t)) * std::cos(om * t); };
    const int n = 4 + static_cast<int>(om / kPi);
    std::vector<double> pts;
    for (int i = 0; i <= n; ++i) pts.push_back(static_cast<double>(i) / n);
    return 2.0 * integrate(f, pts, 1e-14, 1e-300).value;
  }
  // Deform [-1,1] onto -1 -> -i -> 1; exp(-i om t) decays along it and the
  // saddle of the integrand lies on the right leg.
  const cplx e = std::polar(1.0, kPi / 4.0);
  auto expo = [&](double rho) {
    const cplx t = 1.0 - rho * e;
    return -th / (1.0 - t * t) + kI * om * rho * e;
  };
  const double top = std::sqrt(2.0), rs = std::sqrt(th / (2.0 * om));
  const double peak = expo(rs).real();
  auto f = [&](double rho) { return std::exp(expo(rho) - peak) * e; };
  const double w = std::sqrt(rs * rs * rs / th);
  std::vector<double> pts{0.0};
  for (double p : {0.25 * rs, 0.5 * rs, rs - 8 * w, rs - 4 * w, rs - 2 * w, rs - w, rs, rs + w, rs + 2 * w,
                   rs + 4 * w, rs + 8 * w, 2.0 * rs, 4.0 * rs})
    if (p < top && p > pts.back()) pts.push_back(p);
  pts.push_back(top);
  const cplx phase = std::polar(1.0, -om);
  return 2.0 * std::exp(lc + peak) * (phase * integrateC(f, pts, 1e-13)).real();
}

double Mollifier::logOnImag(double y) const {
  const double ay = m_.a * std::abs(y), th = m_.theta;
  auto phi = [&](double t) { return -th / (1.0 - t * t) + ay * t; };
  double ts = 0.0;
  if (ay > 0.0) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double d = 1.0 - mid * mid;
      if (-2.0 * th * mid / (d * d) + ay > 0.0) lo = mid; else hi = mid;
    }
    ts = 0.5 * (lo + hi);
  }
  const double pm = phi(ts);
  const double d = 1.0 - ts * ts;
  const double curv = 2.0 * th * (1.0 + 3.0 * ts * ts) / (d * d * d);
  const double w = 1.0 / std::sqrt(curv);
  // Integrate in u = t - ts so that phi(t) - phi(ts) is formed without cancellation.
  const double ds = d;
  std::vector<double> pts{-1.0 - ts};
  for (double p : {-ts, -8 * w, -2 * w, 0.0, 2 * w, 8 * w})
    if (p > pts.back() && p < 1.0 - ts) pts.push_back(p);
  pts.push_back(1.0 - ts);
  auto f = [&](double u) {
    const double du = ds - u * (2.0 * ts + u);
    if (du <= 0.0) return 0.0;
    return std::exp(u * (ay - th * (2.0 * ts + u) / (du * ds)));
  };
  return logC_ + pm + std::log(integrate(f, pts, 1e-14, 1e-300).value);
}

cplx Mollifier::operator()(cplx z) const {
  const double th = m_.theta, lc = logC_, az = m_.a * std::abs(z);
  auto f = [&](double t) { return std::exp(lc - th / (1.0 - t * t) - kI * (m_.a * t) * z); };
  const int n = 4 + static_cast<int>(az / kPi);
  std::vector<double> pts;
  for (int i = 0; i <= n; ++i) pts.push_back(-1.0 + 2.0 * i / n);
  return integrateC(f, pts, 1e-13);
}

cplx mollifierH(const MultiplierParams& m, cplx z) {
  const Mollifier h(m);
  if (z.imag() == 0.0) return h.onReal(z.real());
  if (z.real() == 0.0) return std::exp(h.logOnImag(z.imag()));
  return h(z);
}

// ---------------------------------------------------------------- F_k

Interpolator::Interpolator(BasisPtr b, const MultiplierParams& m) : b_(std::move(b)), wp_(*b_), h_(m) {
  for (std::size_t k = 1; k <= b_->N; ++k) {
    logH_.push_back(h_.logOnImag(b_->lambdas[k - 1]));
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    pref_.push_back(sign / (b_->lambdas[k - 1] * lambdaPrimeAt(*b_, k)));
  }
}

cplx Interpolator::scaled(std::size_t k, double x) const {
  return pref_.at(k - 1) * std::exp(wp_.logExcluding(x, k)) * h_.onReal(x);
}

cplx Interpolator::operator()(std::size_t k, double x) const { return scaled(k, x) * std::exp(-logH_.at(k - 1)); }

cplx Interpolator::at(std::size_t k, cplx z) const {
  const double lh = logH_.at(k - 1);
  cplx hz;
  if (z.imag() == 0.0) hz = h_.onReal(z.real()) * std::exp(-lh);
  else if (z.real() == 0.0) hz = std::exp(h_.logOnImag(z.imag()) - lh);
  else hz = h_(z) * std::exp(-lh);
  return pref_.at(k - 1) * std::exp(wp_.logExcluding(z, k)) * hz;
}

// ---------------------------------------------------------------- family

double BiorthFamily::psi(std::size_t k, std::size_t i) const {
  return std::exp(logScale.at(k - 1)) * psiScaled.at(k - 1).at(i);
}

double BiorthFamily::moment(std::size_t k, std::size_t l) const {
  return std::exp(logScale.at(k - 1)) * moments->scaledAt(k, l);
}

BiorthFamily buildBiorthFamily(BasisPtr basis, double T, double delta, std::size_t Kbuild, const BiorthOptions& opt) {
  if (!basis) throw Error(ErrorCode::DomainError, "no basis");
  if (Kbuild < 1 || Kbuild > basis->N) throw Error(ErrorCode::DomainError, "Kbuild must lie in [1, N]");
  if (opt.timeNodes < 4) throw Error(ErrorCode::DomainError, "time grid too coarse");
  const auto& b = *basis;
  const std::size_t N = b.N, K = Kbuild;
  BiorthFamily fam;
  fam.basis = basis;
  fam.mult = makeMultiplier(b.params, T, delta);
  fam.K = K;
  const Interpolator F(basis, fam.mult);
  const auto& wp = F.product();
  const auto& H = F.mollifier();

  // Real-line nodes: 16-point panels, graded near 0, truncated once every F_k
  // has decayed below tailTol of its peak for 8 consecutive panels.
  const auto& gl = gaussLegendre(16);
  const double lam1 = b.lambdas[0];
  const double wmax = std::min(4.0 * kPi / T, 8.0 * lam1);
  std::vector<double> tau, wt, hv;
  std::vector<cplx> S;
  std::vector<double> peak(K, 0.0);
  double x0 = 0.0;
  int quiet = 0;
  const double minR = 10.0 * b.lambdas[K - 1] + 20.0 * kPi / T;
  while (true) {
    const double w = std::min(wmax, std::max(0.5 * lam1, 0.25 * x0));
    std::vector<double> pm(K, 0.0);
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const double x = x0 + 0.5 * w * (gl.x[q] + 1.0);
      const cplx s = wp.logValue(x);
      const double hx = H.onReal(x);
      tau.push_back(x);
      wt.push_back(0.5 * w * gl.w[q]);
      S.push_back(s);
      hv.push_back(hx);
      for (std::size_t k = 0; k < K; ++k) {
        const double lr = s.real() - 0.5 * std::log1p((x / b.lambdas[k]) * (x / b.lambdas[k]));
        const double mag = std::abs(F.prefactor(k + 1)) * std::exp(lr) * std::abs(hx);
        pm[k] = std::max(pm[k], mag);
      }
    }
    bool small = true;
    for (std::size_t k = 0; k < K; ++k) {
      peak[k] = std::max(peak[k], pm[k]);
      if (pm[k] >= opt.tailTol * peak[k]) small = false;
    }
    x0 += w;
    quiet = small ? quiet + 1 : 0;
    if (quiet >= 8 && x0 > minR) break;
    if (x0 > opt.maxRadius)
      throw Error(ErrorCode::AccuracyBudgetExceeded, "Fourier inversion radius exceeded its budget");
  }
  const std::size_t M = tau.size();
  fam.quad = {x0, M, wmax};

  const std::size_t n = opt.timeNodes;
  const double ht = T / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) fam.timeGrid.push_back(ht * static_cast<double>(i));

  std::vector<cplx> ePlus(M);
  for (std::size_t j = 0; j < M; ++j) ePlus[j] = std::polar(1.0, 0.5 * T * tau[j]);

  auto table = std::make_shared<MomentTable>();
  table->K = K;
  table->N = N;
  table->scaled.assign(K * N, 0.0);
  fam.psiScaled.assign(K, std::vector<double>(n, 0.0));
  fam.logScale.resize(K);

  parallelFor(K, [&](std::size_t kk) {
    const std::size_t k = kk + 1;
    const double lk = b.lambdas[kk];
    std::vector<double> re(M), im(M);
    std::vector<cplx> fk(M);
    for (std::size_t j = 0; j < M; ++j) {
      const cplx lterm = log1pc(kI * tau[j] / lk);
      fk[j] = F.prefactor(k) * std::exp(S[j] - lterm) * hv[j];
      re[j] = wt[j] * fk[j].real() / kPi;
      im[j] = wt[j] * fk[j].imag() / kPi;
    }
    kernels::fourierSum(tau.data(), re.data(), im.data(), M, -0.5 * T, ht, fam.psiScaled[kk].data(), n);
    for (std::size_t l = 1; l <= N; ++l) {
      const double ll = b.lambdas[l - 1];
      const double decay = std::exp(-ll * T);
      double acc = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        const cplx G = (ePlus[j] - std::conj(ePlus[j]) * decay) / cplx(ll, tau[j]);
        acc += wt[j] * (fk[j] * G).real();
      }
      table->scaled[kk * N + (l - 1)] = acc / kPi;
    }
    fam.logScale[kk] = 0.5 * lk * T - F.logHAtEigen(k);
  });
  table->logScale = fam.logScale;
  fam.moments = table;

  const std::size_t kc = std::min({K, opt.checkK, N});
  for (std::size_t k = 1; k <= kc; ++k)
    for (std::size_t l = 1; l <= kc; ++l)
      fam.rawResidual = std::max(fam.rawResidual, std::abs(fam.moment(k, l) - (k == l ? 1.0 : 0.0)));
  for (std::size_t k = 1; k <= K; ++k) {
    const double lk = b.lambdas[k - 1];
    const double wgt = std::exp(-lk * T + fam.logScale[k - 1]);
    for (std::size_t l = 1; l <= N; ++l) {
      const double r = std::abs(wgt * table->scaledAt(k, l) - (k == l ? std::exp(-lk * T) : 0.0));
      fam.weightedResidual = std::max(fam.weightedResidual, r);
    }
  }
  for (std::size_t k = 1; k <= std::min<std::size_t>(K, 3); ++k)
    for (double x : {0.5, 5.0, 50.0}) {
      const cplx p = F.scaled(k, x);
      const cplx q = F.at(k, cplx(-x, 0.0)) * std::exp(F.logHAtEigen(k));
      if (std::abs(p) > 0.0) fam.symmetryResidual = std::max(fam.symmetryResidual, std::abs(q - std::conj(p)) / std::abs(p));
    }
  if (opt.throwOnResidual && !(fam.weightedResidual <= opt.residualTol))
    throw Error(ErrorCode::BiorthResidualTooLarge,
                "weighted biorthogonality residual " + std::to_string(fam.weightedResidual));
  return fam;
}

}  // namespace dpc

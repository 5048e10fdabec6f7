#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "dpc/semigroup.hpp"
#include "dpc/spectral.hpp"

namespace dpc {

using cplx = std::complex<double>;

struct MultiplierParams {
  double T = 1.0;
  double delta = 0.5;
  double a = 0.25;      // T(1 - delta)/2
  double theta = 4.5;   // (1 + delta)^2 / (kappa^2 T (1 - delta))
};

MultiplierParams makeMultiplier(const ProblemParams& p, double T, double delta);

// Lambda(z) = prod_k (1 + i z / lambda_k): explicit zeros up to P, McMahon
// zeros and an Euler-Maclaurin remainder beyond.
class WeierstrassProduct {
 public:
  explicit WeierstrassProduct(const SpectralBasis& b, std::size_t P = 0);

  cplx logValue(cplx z) const;                       // sum of principal logs
  cplx logExcluding(cplx z, std::size_t k) const;    // same without factor k
  cplx value(cplx z) const;
  double primeMagnitude(std::size_t k) const;        // |Lambda'(i lambda_k)|, closed form
  std::size_t explicitCount() const { return lam_.size(); }
  double lambda(std::size_t k) const { return lam_.at(k - 1); }

 private:
  cplx tail(cplx z) const;
  cplx term(cplx z, double kk) const;  // log(1 + iz/lambda(k)) on McMahon zeros, real k

  double nu_, kappa_;
  ZeroTable zeros_;
  std::vector<double> lam_;
};

cplx lambdaProduct(const SpectralBasis& b, cplx z);
double lambdaPrimeAt(const SpectralBasis& b, std::size_t k);

class Mollifier {
 public:
  explicit Mollifier(const MultiplierParams& m);
  double onReal(double x) const;       // H(x)
  double logOnImag(double y) const;    // log H(iy)
  cplx operator()(cplx z) const;       // direct quadrature, any z
  double logC() const { return logC_; }
  const MultiplierParams& params() const { return m_; }

 private:
  MultiplierParams m_;
  double logC_;
};

cplx mollifierH(const MultiplierParams& m, cplx z);

// F_k on the real line and at arbitrary complex points.
class Interpolator {
 public:
  Interpolator(BasisPtr b, const MultiplierParams& m);
  cplx operator()(std::size_t k, double x) const;
  cplx at(std::size_t k, cplx z) const;
  // F_k(x) * H(i lambda_k), which stays representable for large k
  cplx scaled(std::size_t k, double x) const;
  double logHAtEigen(std::size_t k) const { return logH_.at(k - 1); }
  double prefactor(std::size_t k) const { return pref_.at(k - 1); }
  const WeierstrassProduct& product() const { return wp_; }
  const Mollifier& mollifier() const { return h_; }

 private:
  BasisPtr b_;
  WeierstrassProduct wp_;
  Mollifier h_;
  std::vector<double> logH_, pref_;
};

struct BiorthOptions {
  std::size_t timeNodes = 513;
  double tailTol = 1e-17;      // relative size of F_k at the truncation radius
  double maxRadius = 5e6;
  double residualTol = 1e-6;
  std::size_t checkK = 6;      // block used for the raw residual
  bool throwOnResidual = true;
};

struct QuadSpec {
  double R = 0.0;
  std::size_t M = 0;
  double panelWidth = 0.0;
};

struct BiorthFamily {
  BasisPtr basis;
  MultiplierParams mult;
  std::size_t K = 0;
  std::vector<double> timeGrid;
  std::vector<std::vector<double>> psiScaled;  // psi_k(t_i) = exp(logScale_k) * psiScaled[k-1][i]
  std::vector<double> logScale;
  std::shared_ptr<const MomentTable> moments;
  QuadSpec quad;
  double rawResidual = 0.0;       // max |int psi_k e^{-lambda_l (T-t)} - delta_kl|, k,l <= checkK
  double weightedResidual = 0.0;  // max e^{-lambda_k T} |moment_kl - delta_kl|, k <= K, l <= N
  double symmetryResidual = 0.0;  // max |F_k(-x) - conj F_k(x)| / |F_k(x)| on probe points

  double psi(std::size_t k, std::size_t i) const;
  // exact moment int_0^T psi_k(t) e^{-lambda_l (T-t)} dt (may overflow for large k)
  double moment(std::size_t k, std::size_t l) const;
};

BiorthFamily buildBiorthFamily(BasisPtr basis, double T, double delta, std::size_t Kbuild,
                               const BiorthOptions& opt = {});

}  // namespace dpc

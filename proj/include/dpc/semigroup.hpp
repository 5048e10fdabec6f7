#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "dpc/spectral.hpp"

namespace dpc {

struct CoeffVector {
  BasisPtr basis;
  std::vector<double> coeffs;

  static CoeffVector zeros(BasisPtr b) { return {b, std::vector<double>(b->N, 0.0)}; }
  static CoeffVector unit(BasisPtr b, std::size_t k) {
    auto v = zeros(b);
    v.coeffs.at(k - 1) = 1.0;
    return v;
  }
};

enum class BoundarySide { LeftNeumann, RightDirichlet, CriticalLeft };

struct BoundaryConfig {
  BoundarySide side = BoundarySide::LeftNeumann;
  double traceCoeff(const SpectralBasis& b, std::size_t k) const;
  // default Sobolev index used for residual reporting
  double defaultSobolev(const SpectralBasis& b) const;
};

const char* sideName(BoundarySide s) noexcept;

// Moments int_0^T psi_k(t) e^{-lambda_l (T-t)} dt of a biorthogonal family,
// stored as exp(logScale_k) * scaled[(k-1)*N + (l-1)].
struct MomentTable {
  std::size_t K = 0, N = 0;
  std::vector<double> logScale;
  std::vector<double> scaled;
  double scaledAt(std::size_t k, std::size_t l) const { return scaled[(k - 1) * N + (l - 1)]; }
};

// Uniform samples f(t_i), t_i = i*T/(n-1). When synthesized from a family,
// f = sum c_k psi_k with c_k = coeffRep[k]; coeffScaled[k] = c_k exp(logScale_k)
// survives the under/overflow of the two factors.
struct ControlSignal {
  double T = 0.0;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> coeffRep;
  std::vector<double> coeffScaled;
  std::shared_ptr<const MomentTable> moments;
};

ControlSignal zeroSignal(double T, std::size_t nodes);

CoeffVector applySemigroup(const CoeffVector& u, double t);
double sobolevNorm(const CoeffVector& u, double s);

// int_0^tau f(t) e^{-lambda (tau - t)} dt, piecewise-cubic f integrated exactly
// against the exponential; tau must be a grid node.
double dampedIntegral(const ControlSignal& f, double tau, double lambda);

CoeffVector weakSolution(const CoeffVector& u0, const ControlSignal& f, double tau, const BoundaryConfig& cfg);

}  // namespace dpc

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "dpc/specialfn.hpp"

namespace dpc {

enum class Regime { Supercritical, Critical };

struct ProblemParams {
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
  double kappa = 1.0;  // (2 - alpha)/2
  double nu = 0.0;
  Regime regime = Regime::Supercritical;
};

// mu(d) = (d - 1)^2 / 4
inline double muCrit(double d) { return 0.25 * (d - 1.0) * (d - 1.0); }

ProblemParams makeParams(double alpha, double beta, double mu);

struct SpectralBasis {
  ProblemParams params;
  std::size_t N = 0;
  ZeroTable table;
  std::vector<double> lambdas;
  std::vector<double> norms;                // sqrt(2 kappa)/|J'(j_k)|
  std::vector<double> neumannTrace;          // generalized limit at 0
  std::vector<double> dirichletDerivTrace;   // signed Phi_k'(1)
  std::vector<double> criticalTrace;         // weighted Dirichlet coupling, critical regime

  double lambda(std::size_t k) const { return lambdas.at(k - 1); }
};

using BasisPtr = std::shared_ptr<const SpectralBasis>;

SpectralBasis buildBasis(const ProblemParams& p, std::size_t N);

// Phi_k(x), 1-based k, 0 < x < 1.
double evalEigenfunction(const SpectralBasis& b, std::size_t k, double x);
double evalEigenfunctionDeriv(const SpectralBasis& b, std::size_t k, double x);

using RealFn = std::function<double(double)>;

struct GridFunction {
  std::vector<double> nodes;
  std::vector<double> values;
  double weightExponent = 0.0;

  // piecewise-linear, constant extension past the end nodes
  double operator()(double x) const;
};

// <f, g>_beta = int_0^1 f g x^beta dx
double innerProductBeta(const RealFn& f, const RealFn& g, const ProblemParams& p, int panels = 8);
double innerProductBeta(const GridFunction& f, const GridFunction& g, const ProblemParams& p);

// <Phi_k, Phi_l>_beta with the Bessel form of the integrand.
double gramEntry(const SpectralBasis& b, std::size_t k, std::size_t l);

std::vector<double> expand(const RealFn& u0, const SpectralBasis& b);

// rhs - lhs of the Hardy inequality; du may be empty (finite differences).
double hardyResidual(const RealFn& u, const RealFn& du, const ProblemParams& p);

// Pieces of the Poincare chain: {int x^beta u^2, int u^2 / x^(2-a-b), int x^(a+b) u_x^2 / mu(a+b)}
struct PoincareTerms {
  double weighted;
  double hardy;
  double energy;
};
PoincareTerms poincareTerms(const RealFn& u, const RealFn& du, const ProblemParams& p);

}  // namespace dpc

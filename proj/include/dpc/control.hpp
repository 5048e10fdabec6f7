#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpc/biorth.hpp"
#include "dpc/semigroup.hpp"

namespace dpc {

ControlSignal synthesizeControl(const CoeffVector& u0, const BiorthFamily& fam, const BoundaryConfig& cfg);

// ||u(T)||_{-s} for the solution driven by f. Uses the family's moment table
// when f carries one, time quadrature otherwise.
double verifyNullControl(const CoeffVector& u0, const ControlSignal& f, const BoundaryConfig& cfg, double s);

// L2(0,T) norm from the samples (composite Simpson, trapezoid fallback).
double l2Norm(const ControlSignal& f);

// The factor M(T, alpha, nu, delta) shared by the three upper bounds.
double boundFactorM(const ProblemParams& p, double T, double delta);

double upperBoundExpr(const ProblemParams& p, double T, double delta, const BoundaryConfig& cfg, double c = 1.0);
double lowerBoundExpr(const ProblemParams& p, double T, const BoundaryConfig& cfg, double c = 1.0);

// exp(A(d) - (lambda_1 + d) T) / h for a free d > 0; equals the left-Neumann
// lower bound at d = kappa^2 j_2^2 / 2.
double lowerBoundGeneral(const ProblemParams& p, double T, double d, double c = 1.0);

struct Calibration {
  double cUpper = 1.0;
  double cLower = 1.0;
  bool upToConstant = true;  // true while c = 1 is a placeholder
};

struct CostReport {
  ProblemParams params;
  double T = 0.0;
  double delta = 0.0;
  double estimatedCost = 0.0;
  double upperExpr = 0.0;
  double lowerExpr = 0.0;
  Calibration calibration;
  std::size_t argmaxProbe = 0;
  std::string label = "moment-method cost";
};

CostReport estimateCost(const SpectralBasis& basis, const BiorthFamily& fam, const BoundaryConfig& cfg,
                        const std::vector<CoeffVector>& probes, const Calibration& cal = {});

// Unit vectors e_1..e_modes plus `mixtures` random combinations of the first
// `modes` coefficients, normalized in L2_beta.
std::vector<CoeffVector> defaultProbes(BasisPtr b, std::size_t modes, std::size_t mixtures, std::uint64_t seed);

}  // namespace dpc

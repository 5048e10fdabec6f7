#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace dpc {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

struct ComplexQuadResult {
  std::complex<double> value;
  double error = 0.0;
};

// Globally adaptive 15/31-point Gauss-Kronrod on [a, b]. Throws
// QuadratureNonConvergence when the error estimate stays above
// max(absTol, relTol*|I|) after maxIntervals bisections.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double relTol = 1e-13, double absTol = 0.0, unsigned maxIntervals = 2000);

// Same, with interior breakpoints.
QuadResult integrate(const std::function<double(double)>& f, std::span<const double> pts,
                     double relTol = 1e-13, double absTol = 0.0, unsigned maxIntervals = 2000);

ComplexQuadResult integrateComplex(const std::function<std::complex<double>(double)>& f, std::span<const double> pts,
                                   double relTol = 1e-13, double absTol = 0.0, unsigned maxIntervals = 2000);

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// n-point Gauss-Legendre rule, n in {8, 16, 32}.
const Rule& gaussLegendre(int n);

}  // namespace dpc

#pragma once

#include <cstddef>
#include <vector>

namespace dpc {

// Real-argument Bessel J_nu, nu >= 0, x >= 0.
double besselJ(double nu, double x);

// J'_nu(x) = (nu/x) J_nu(x) - J_{nu+1}(x); x > 0.
double besselJprime(double nu, double x);

struct BesselPair {
  double j;     // J_nu(x)
  double jp1;   // J_{nu+1}(x)
};
BesselPair besselJPair(double nu, double x);

struct ZeroTable {
  double nu = 0.0;
  std::vector<double> zeros;   // j_{nu,1} < j_{nu,2} < ...
  std::vector<double> derivs;  // J'_nu(j_{nu,k}), signed
  std::size_t size() const { return zeros.size(); }
};

ZeroTable besselZeros(double nu, std::size_t K);

// McMahon asymptotic estimate of j_{nu,k}; k may be non-integer.
double mcmahonZero(double nu, double k);

double gammaFn(double x);

}  // namespace dpc

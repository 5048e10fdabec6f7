#include <cmath>

#include "dpc/kernels.hpp"

namespace dpc::kernels::scalar {

void fourierDirect(const double* tau, const double* re, const double* im, std::size_t m, double s0,
                   double h, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s0 + static_cast<double>(i) * h;
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double ph = s * tau[j];
      acc += re[j] * std::cos(ph) - im[j] * std::sin(ph);
    }
    out[i] += acc;
  }
}

void fourierRecur(const double* tau, const double* re, const double* im, std::size_t m, double s0,
                  double h, double* out, std::size_t n) {
  for (std::size_t j = 0; j < m; ++j) {
    const double wr = std::cos(h * tau[j]), wi = std::sin(h * tau[j]);
    double zr = 0.0, zi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % kAnchor == 0) {
        const double ph = (s0 + static_cast<double>(i) * h) * tau[j];
        zr = std::cos(ph);
        zi = std::sin(ph);
      } else {
        const double t = zr * wr - zi * wi;
        zi = zr * wi + zi * wr;
        zr = t;
      }
      out[i] += re[j] * zr - im[j] * zi;
    }
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace dpc::kernels::scalar

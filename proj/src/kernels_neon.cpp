#include "dpc/kernels.hpp"

#if defined(__ARM_NEON)
#include <arm_neon.h>

#include <cmath>
#include <vector>

namespace dpc::kernels {
namespace {

void fourierNeon(const double* tau, const double* re, const double* im, std::size_t m, double s0,
                 double h, double* out, std::size_t n) {
  std::vector<float64x2_t> acc(n, vdupq_n_f64(0.0));
  double wr[2], wi[2], zr[2], zi[2];
  const std::size_t m2 = m - m % 2;
  for (std::size_t j = 0; j < m2; j += 2) {
    for (int l = 0; l < 2; ++l) {
      wr[l] = std::cos(h * tau[j + l]);
      wi[l] = std::sin(h * tau[j + l]);
    }
    const float64x2_t vwr = vld1q_f64(wr), vwi = vld1q_f64(wi);
    const float64x2_t vre = vld1q_f64(re + j), vim = vld1q_f64(im + j);
    float64x2_t vzr = vdupq_n_f64(0.0), vzi = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i % kAnchor == 0) {
        const double s = s0 + static_cast<double>(i) * h;
        for (int l = 0; l < 2; ++l) {
          zr[l] = std::cos(s * tau[j + l]);
          zi[l] = std::sin(s * tau[j + l]);
        }
        vzr = vld1q_f64(zr);
        vzi = vld1q_f64(zi);
      } else {
        const float64x2_t t = vfmsq_f64(vmulq_f64(vzr, vwr), vzi, vwi);
        vzi = vfmaq_f64(vmulq_f64(vzi, vwr), vzr, vwi);
        vzr = t;
      }
      acc[i] = vaddq_f64(acc[i], vfmsq_f64(vmulq_f64(vre, vzr), vim, vzi));
    }
  }
  for (std::size_t i = 0; i < n; ++i) out[i] += vaddvq_f64(acc[i]);
  if (m2 < m) scalar::fourierRecur(tau + m2, re + m2, im + m2, m - m2, s0, h, out, n);
}

double dotNeon(const double* a, const double* b, std::size_t n) {
  float64x2_t s = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) s = vfmaq_f64(s, vld1q_f64(a + i), vld1q_f64(b + i));
  double r = vaddvq_f64(s);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

void axpyNeon(double a, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_n_f64(vld1q_f64(y + i), vld1q_f64(x + i), a));
  for (; i < n; ++i) y[i] += a * x[i];
}

const Table kNeon{fourierNeon, dotNeon, axpyNeon};

}  // namespace

const Table* neonTable() noexcept { return &kNeon; }

}  // namespace dpc::kernels

#else

namespace dpc::kernels {
const Table* neonTable() noexcept { return nullptr; }
}  // namespace dpc::kernels

#endif

#include <immintrin.h>

#include <cmath>
#include <vector>

#include "dpc/kernels.hpp"

namespace dpc::kernels {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Four nodes per lane group; per-time accumulators stay 4-wide until the end.
void fourierAvx2(const double* tau, const double* re, const double* im, std::size_t m, double s0,
                 double h, double* out, std::size_t n) {
  std::vector<double> acc(4 * n, 0.0);
  alignas(32) double wr[4], wi[4], zr[4], zi[4];
  const std::size_t m4 = m - m % 4;
  for (std::size_t j = 0; j < m4; j += 4) {
    for (int l = 0; l < 4; ++l) {
      wr[l] = std::cos(h * tau[j + l]);
      wi[l] = std::sin(h * tau[j + l]);
    }
    const __m256d vwr = _mm256_load_pd(wr), vwi = _mm256_load_pd(wi);
    const __m256d vre = _mm256_loadu_pd(re + j), vim = _mm256_loadu_pd(im + j);
    __m256d vzr = _mm256_setzero_pd(), vzi = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; ++i) {
      if (i % kAnchor == 0) {
        const double s = s0 + static_cast<double>(i) * h;
        for (int l = 0; l < 4; ++l) {
          zr[l] = std::cos(s * tau[j + l]);
          zi[l] = std::sin(s * tau[j + l]);
        }
        vzr = _mm256_load_pd(zr);
        vzi = _mm256_load_pd(zi);
      } else {
        const __m256d t = _mm256_fmsub_pd(vzr, vwr, _mm256_mul_pd(vzi, vwi));
        vzi = _mm256_fmadd_pd(vzr, vwi, _mm256_mul_pd(vzi, vwr));
        vzr = t;
      }
      double* a = acc.data() + 4 * i;
      _mm256_storeu_pd(a, _mm256_add_pd(_mm256_loadu_pd(a), _mm256_fmsub_pd(vre, vzr, _mm256_mul_pd(vim, vzi))));
    }
  }
  for (std::size_t i = 0; i < n; ++i) out[i] += hsum(_mm256_loadu_pd(acc.data() + 4 * i));
  if (m4 < m) scalar::fourierRecur(tau + m4, re + m4, im + m4, m - m4, s0, h, out, n);
}

double dotAvx2(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpyAvx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

const Table kAvx2{fourierAvx2, dotAvx2, axpyAvx2};

}  // namespace

const Table* avx2Table() noexcept { return &kAvx2; }

}  // namespace dpc::kernels

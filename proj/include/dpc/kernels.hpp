#pragma once

#include <cstddef>
#include <string_view>

namespace dpc::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isaName(Isa isa) noexcept;
bool isaAvailable(Isa isa) noexcept;
Isa activeIsa() noexcept;
// Forces a variant (tests, benchmarks). Falls back to Scalar if unavailable.
void setIsa(Isa isa) noexcept;

// out[i] = sum_j re[j]*cos(s_i*tau[j]) - im[j]*sin(s_i*tau[j]), s_i = s0 + i*h.
// Accumulates into out.
void fourierSum(const double* tau, const double* re, const double* im, std::size_t m,
                double s0, double h, double* out, std::size_t n);

double dot(const double* a, const double* b, std::size_t n);
// y += a*x
void axpy(double a, const double* x, double* y, std::size_t n);

using FourierFn = void (*)(const double*, const double*, const double*, std::size_t, double, double,
                           double*, std::size_t);
using DotFn = double (*)(const double*, const double*, std::size_t);
using AxpyFn = void (*)(double, const double*, double*, std::size_t);

struct Table {
  FourierFn fourier;
  DotFn dot;
  AxpyFn axpy;
};

// Re-anchor period of the angle recurrence.
inline constexpr std::size_t kAnchor = 32;

namespace scalar {
void fourierDirect(const double*, const double*, const double*, std::size_t, double, double, double*,
                   std::size_t);
void fourierRecur(const double*, const double*, const double*, std::size_t, double, double, double*,
                  std::size_t);
double dot(const double*, const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
}  // namespace scalar

const Table* avx2Table() noexcept;  // nullptr when not compiled in
const Table* neonTable() noexcept;

}  // namespace dpc::kernels

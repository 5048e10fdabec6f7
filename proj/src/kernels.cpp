#include "dpc/kernels.hpp"

#include <atomic>

namespace dpc::kernels {

#if !defined(DPC_BUILD_AVX2)
const Table* avx2Table() noexcept { return nullptr; }
#endif
#if !defined(DPC_BUILD_NEON)
const Table* neonTable() noexcept { return nullptr; }
#endif

namespace {

const Table kScalar{scalar::fourierRecur, scalar::dot, scalar::axpy};

const Table* tableFor(Isa isa) noexcept {
  switch (isa) {
    case Isa::Avx2: return avx2Table();
    case Isa::Neon: return neonTable();
    case Isa::Scalar: return &kScalar;
  }
  return &kScalar;
}

Isa detect() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (avx2Table() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
  if (neonTable()) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isaName(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "scalar";
}

bool isaAvailable(Isa isa) noexcept {
  if (isa == Isa::Scalar) return true;
  if (!tableFor(isa)) return false;
#if defined(__x86_64__) || defined(__i386__)
  if (isa == Isa::Avx2) {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }
#endif
  return true;
}

Isa activeIsa() noexcept { return current().load(std::memory_order_relaxed); }

void setIsa(Isa isa) noexcept { current().store(isaAvailable(isa) ? isa : Isa::Scalar); }

void fourierSum(const double* tau, const double* re, const double* im, std::size_t m, double s0, double h,
                double* out, std::size_t n) {
  tableFor(activeIsa())->fourier(tau, re, im, m, s0, h, out, n);
}

double dot(const double* a, const double* b, std::size_t n) { return tableFor(activeIsa())->dot(a, b, n); }

void axpy(double a, const double* x, double* y, std::size_t n) { tableFor(activeIsa())->axpy(a, x, y, n); }

}  // namespace dpc::kernels

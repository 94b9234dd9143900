#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense vector kernels behind the pseudolikelihood solver. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2/FMA variant picked
// at runtime from CPUID. The variants sum in a different order, so they agree
// to rounding, not bit-for-bit; a given backend is deterministic.

namespace ergm::kernels {

enum class Backend { scalar, avx2 };

struct KernelTable {
  Backend backend;
  /// sum_k a[k] * b[k]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// sum_k w[k] * a[k] * b[k]
  double (*weighted_dot)(const double* w, const double* a, const double* b, std::size_t n);
  /// y[k] += alpha * x[k]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_has_avx2() noexcept;

/// The table in use. Chosen once: AVX2 when compiled and supported by the
/// CPU, unless ERGM_KERNELS=scalar is set in the environment.
const KernelTable& active() noexcept;
/// Overrides the selection; falls back to scalar if AVX2 is unavailable.
void select(Backend b) noexcept;

std::string_view backend_name(Backend b) noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  return active().weighted_dot(w.data(), a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace ergm::kernels

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace ergm::kernels {

namespace {

const KernelTable kScalar{Backend::scalar, detail::dot_scalar, detail::weighted_dot_scalar, detail::axpy_scalar};
#if defined(ERGM_HAVE_AVX2)
const KernelTable kAvx2{Backend::avx2, detail::dot_avx2, detail::weighted_dot_avx2, detail::axpy_avx2};
#endif

const KernelTable* initial_table() noexcept {
  if (const char* env = std::getenv("ERGM_KERNELS"); env && std::string_view(env) == "scalar") return &kScalar;
  if (const KernelTable* t = avx2_table(); t && cpu_has_avx2()) return t;
  return &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(ERGM_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() noexcept {
#if defined(ERGM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

void select(Backend b) noexcept {
  const KernelTable* t = &kScalar;
  if (b == Backend::avx2 && avx2_table() && cpu_has_avx2()) t = avx2_table();
  current().store(t, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) noexcept { return b == Backend::avx2 ? "avx2" : "scalar"; }

}  // namespace ergm::kernels

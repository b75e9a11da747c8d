#include <atomic>
#include <cstdlib>

#include "kernels_impl.hpp"
#include "symdec/kernels.hpp"

namespace symdec::kernels {

namespace {

const KernelTable kScalar{"scalar", detail::gemm_scalar, detail::mix_rows4_scalar,
                          detail::mix_cols4_scalar, detail::sum_squares_scalar};

#if defined(SYMDEC_HAVE_AVX2)
const KernelTable kAvx2{"avx2", detail::gemm_avx2, detail::mix_rows4_avx2,
                        detail::mix_cols4_avx2, detail::sum_squares_avx2};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* lookup(std::string_view name) {
  if (name == "scalar") return &kScalar;
  if (name == "avx2") return avx2();
  return nullptr;
}

const KernelTable* initial() {
  if (const char* env = std::getenv("SYMDEC_KERNELS")) {
    if (const KernelTable* t = lookup(env)) return t;
  }
  if (const KernelTable* t = avx2()) return t;
  return &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial()};
  return table;
}

}  // namespace

const KernelTable& scalar() { return kScalar; }

const KernelTable* avx2() {
#if defined(SYMDEC_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* t = lookup(name);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

std::vector<std::string_view> available() {
  std::vector<std::string_view> names{kScalar.name};
  if (const KernelTable* t = avx2()) names.push_back(t->name);
  return names;
}

}  // namespace symdec::kernels

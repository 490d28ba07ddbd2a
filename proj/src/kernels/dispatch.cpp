#include <atomic>

#include "dasg/error.hpp"
#include "dasg/kernels.hpp"
#include "kernels_impl.hpp"

namespace dasg::kernels {
namespace {

constexpr KernelTable kScalar{scalar::sum_squares, scalar::squared_distance, scalar::dot,
                              scalar::scale,       scalar::hadamard,         scalar::dual_update};

#if defined(DASG_HAVE_AVX2)
constexpr KernelTable kAvx2{avx2::sum_squares, avx2::squared_distance, avx2::dot,
                            avx2::scale,       avx2::hadamard,         avx2::dual_update};
#endif

bool detect_avx2() noexcept {
#if defined(DASG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa best_isa() noexcept { return detect_avx2() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{best_isa()};
  return isa;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(DASG_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return detect_avx2();
  }
  return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

void set_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw UsageError("instruction set not available: " + std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

const KernelTable& active() noexcept {
#if defined(DASG_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

}  // namespace dasg::kernels

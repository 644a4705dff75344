#include <cstdlib>
#include <string_view>

#include "crisis_pulse/simd/kernels.hpp"

namespace crisis_pulse::simd {
namespace {

const KernelTable& select_backend() {
  const char* forced = std::getenv("CRISIS_PULSE_SIMD");
  if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return *t;
  if (const KernelTable* t = neon_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select_backend();
  return table;
}

}  // namespace crisis_pulse::simd

#include "axiskit/simd/angular_moments.hpp"

#include <atomic>

#include "axiskit/error.hpp"

namespace axiskit::simd {

namespace {

bool cpu_has_avx2() {
#if defined(AXISKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa best_isa() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& dispatch() {
  static std::atomic<Isa> isa{best_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
  return cpu_has_avx2();
}

Isa active_isa() { return dispatch().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa))
    throw DomainError("instruction set '" + std::string(isa_name(isa)) + "' is not available");
  dispatch().store(isa, std::memory_order_relaxed);
}

MomentSums angular_moments(const NodeBlock& nodes, double d2, double b) {
#if defined(AXISKIT_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return angular_moments_avx2(nodes, d2, b);
#endif
  return angular_moments_scalar(nodes, d2, b);
}

}  // namespace axiskit::simd

#pragma once

// Inner loop of every angular kernel evaluation.
//
// The kernels reduce to integrals over psi in [0, pi/2] of
//   {1, sin^2 psi, cos 2psi} * D(psi)^{-3/2},   D = d2 + b sin^2 psi,
// with d2 = (r - rho)^2 + zeta^2 and b = 4 r rho. A panel of quadrature nodes
// is summed against both the Kronrod and the embedded Gauss weights in one
// pass. The scalar variant is the reference; the AVX2 variant is selected at
// runtime when the CPU supports it and must agree to rounding.

#include <cstddef>
#include <string_view>

namespace axiskit::simd {

/// Node block; `n` must be a multiple of 4 (pad with zero weights).
struct NodeBlock {
  const double* sin2 = nullptr;   // sin^2 psi_i
  const double* cos2 = nullptr;   // cos 2 psi_i
  const double* w_kronrod = nullptr;
  const double* w_gauss = nullptr;
  std::size_t n = 0;
};

struct MomentSums {
  double m0_k = 0.0, ms_k = 0.0, mc_k = 0.0;  // Kronrod: sum w D^-3/2 {1, s, c}
  double m0_g = 0.0, ms_g = 0.0, mc_g = 0.0;  // Gauss
};

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

/// Currently dispatched variant (best supported unless overridden).
Isa active_isa();

/// Overrides the dispatch (tests and benchmarks). Throws DomainError when the
/// variant is unavailable on this build or CPU.
void set_active_isa(Isa isa);

MomentSums angular_moments(const NodeBlock& nodes, double d2, double b);

MomentSums angular_moments_scalar(const NodeBlock& nodes, double d2, double b);
#if defined(AXISKIT_HAVE_AVX2)
MomentSums angular_moments_avx2(const NodeBlock& nodes, double d2, double b);
#endif

}  // namespace axiskit::simd

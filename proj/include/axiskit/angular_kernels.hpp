#pragma once

// Meridian-plane Biot-Savart kernels.
//
// With D(phi) = r^2 + rho^2 - 2 r rho cos(phi) + zeta^2 and zeta = z - k,
//
//   G1 =  (1/4pi) int_0^{2pi} zeta cos(phi)           / D^{3/2} dphi
//   G2 = -(1/4pi) int_0^{2pi} (rho - r cos(phi))      / D^{3/2} dphi
//   G3 =  (1/4pi) int_0^{2pi} (r - rho cos(phi))      / D^{3/2} dphi
//
// so that u_r = int G1 w_theta, u_z = -int G2 w_theta and
// u_theta = int G3 w_z - int G1 w_r (all against rho drho dk).
//
// Evaluation uses psi = phi/2 on [0, pi/2], where D = d2 + b sin^2(psi) with
// d2 = (r - rho)^2 + zeta^2 and b = 4 r rho. This form has no cancellation
// near the diagonal. The integrand has a boundary layer of width K^{-1/2} at
// psi = 0 (K = b / d2), resolved by a dyadic partition graded toward 0 and
// adaptive bisection on top.

#include <cstddef>

namespace axiskit {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct KernelTolerance {
  double rel = 1e-12;   // relative to the moment scale int D^{-3/2}
  double abs = 0.0;
  std::size_t max_panels = std::size_t{1} << 14;
};

/// Values of G1, G2, G3 at (r, rho, zeta) with absolute error estimates.
struct KernelTriple {
  double gamma1 = 0.0, gamma2 = 0.0, gamma3 = 0.0;
  double err1 = 0.0, err2 = 0.0, err3 = 0.0;
  std::size_t panels = 0;
};

/// Raw angular moments over psi in [0, pi/2]:
/// m0 = int D^{-3/2}, ms = int sin^2 D^{-3/2}, mc = int cos(2psi) D^{-3/2}.
struct AngularMoments {
  double m0 = 0.0, ms = 0.0, mc = 0.0;
  double err0 = 0.0, errs = 0.0, errc = 0.0;
  std::size_t panels = 0;
};

/// Moments for D = d2 + b sin^2(psi). Requires d2 > 0, b >= 0.
/// Throws ConvergenceError (best estimate = m0) when the budget runs out.
AngularMoments angular_moments(double d2, double b, const KernelTolerance& tol = {});

/// Throws DomainError on the diagonal point (rho = r, zeta = 0) or for
/// negative radii; ConvergenceError when the budget runs out.
KernelTriple kernel_triple(double r, double rho, double zeta, const KernelTolerance& tol = {});

/// K = 4 r rho / ((r - rho)^2 + zeta^2).
double modulus_k(double r, double rho, double zeta);

/// Model integral I(K, beta) = int_0^{pi/2} (1 + K sin^2 phi)^{-beta/2} dphi.
struct AngularIntegralSpec {
  double K = 0.0;
  double beta = 1.0;
  double tol = 1e-13;   // absolute
  std::size_t max_panels = std::size_t{1} << 14;
};

struct AngularIntegralValue {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

/// Throws DomainError for K < 0 or beta < 1, ConvergenceError when the
/// tolerance cannot be met within the panel budget.
AngularIntegralValue angular_integral(const AngularIntegralSpec& spec);

/// I(K, beta) divided by its envelope: min{1, K^{-delta/2}} for beta = 1
/// (requires 0 <= delta < 1) and min{1, K^{-1/2}} for beta > 1 (delta unused).
double angular_bound_ratio(const AngularIntegralSpec& spec, double delta);

}  // namespace axiskit

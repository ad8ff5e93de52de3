#pragma once

// Velocity reconstruction from vorticity in the meridian half-plane:
//
//   u_r     =  int int G1(r, rho, z - k) w_theta(rho, k) rho drho dk
//   u_z     = -int int G2(r, rho, z - k) w_theta(rho, k) rho drho dk
//   u_theta =  int int G3 w_z rho drho dk - int int G1 w_r rho drho dk
//
// The rho axis is split at r^gamma/8, r/4, r - r^delta/2, r + r^delta/2 and
// 4r into six regions I1..I6. Inside I4 a square patch around the singular
// point (r, z) is integrated in polar coordinates with geometric grading
// toward the centre; everything else is iterated adaptive Gauss-Kronrod with
// breakpoints graded toward r and z. The half-plane is truncated at
// rho <= rho_max, |k - z| <= z_max; the truncation error is bounded by the
// crude kernel bounds times the field's majorant, integrated over the
// complement.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "axiskit/angular_kernels.hpp"
#include "axiskit/geometry.hpp"
#include "axiskit/quadrature.hpp"

namespace axiskit {

struct QuadratureSpec {
  double gamma = 0.0;
  double delta = 1.0;
  double rho_max = 0.0;  // 0: 64 max(1, r)
  double z_max = 0.0;    // 0: 64 max(1, r)
  quad::Tolerance tol{1e-10, 1e-9};
  std::size_t near_diag_refinement = 24;  // geometric levels toward (r, z)
  double polar_radius = 0.5;              // half-width cap of the polar patch
  std::size_t max_panels = 2000;          // per one-dimensional integral
  KernelTolerance kernel_tol{1e-11, 0.0, std::size_t{1} << 14};

  /// Throws DomainError unless 0 <= gamma, delta <= 1, tol > 0 and the
  /// (resolved) truncation radii are >= 8 max(1, r).
  void validate_for(double r) const;
  double resolved_rho_max(double r) const;
  double resolved_z_max(double r) const;
};

enum class VelocityComponent { ur, uz, utheta, b };

std::string to_string(VelocityComponent c);

struct ReconstructionResult {
  double value = 0.0;
  std::array<double, 6> per_region{};  // I1..I6
  std::array<double, 2> terms{};       // u_theta: (int G3 w_z, -int G1 w_r); else (value, 0)
  double tail_bound = 0.0;
  double quad_err = 0.0;
  bool converged = true;
  std::array<double, 7> region_edges{};  // 0, r^g/8, r/4, r - r^d/2, r + r^d/2, 4r, rho_max

  double total_error() const { return tail_bound + quad_err; }
};

/// Requires p.r > 1. Throws DomainError when the field has neither a support
/// inside the truncated domain nor a majorant (tail not certifiable).
ReconstructionResult reconstruct_ur(const VorticityField& w, const MeridianPoint& p, const QuadratureSpec& spec = {});
ReconstructionResult reconstruct_uz(const VorticityField& w, const MeridianPoint& p, const QuadratureSpec& spec = {});
ReconstructionResult reconstruct_utheta(const VorticityField& w, const MeridianPoint& p,
                                        const QuadratureSpec& spec = {});

/// Dispatch on the component; `b` is |u_r| + |u_z| (errors added).
ReconstructionResult reconstruct(VelocityComponent c, const VorticityField& w, const MeridianPoint& p,
                                 const QuadratureSpec& spec = {});

struct DecayTraceOptions {
  QuadratureSpec spec;
  bool split_from_beta = true;  // (gamma, delta) from optimize_split(beta)
  double z = 0.0;               // probe height
  double tol_factor = 1e-4;     // absolute tol = factor * r^{predicted exponent}
  double max_relative_error = 0.1;
  unsigned workers = 1;
};

struct TraceSample {
  double r = 0.0;
  double value = 0.0;  // |component|
  double quad_err = 0.0;
  double tail_bound = 0.0;
  std::array<double, 6> per_region{};
  bool flagged = false;  // total error above max_relative_error * value
};

/// Reconstructs the component along an increasing ladder of radii > 1.
/// Tolerances start proportional to the predicted magnitude and are
/// tightened against the computed value when needed.
std::vector<TraceSample> decay_trace(const VorticityField& w, VelocityComponent c, std::span<const double> r_ladder,
                                     const DecayTraceOptions& opt = {});

}  // namespace axiskit

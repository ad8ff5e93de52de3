#pragma once

// Norms over axisymmetric domains. Every 3-D integral is a 2-D meridian
// integral with weight 2 pi r.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "axiskit/geometry.hpp"
#include "axiskit/quadrature.hpp"

namespace axiskit {

using ScalarFn = std::function<double(double r, double z)>;

enum class CylinderShape { full, shell, ball };

std::string to_string(CylinderShape s);

/// full: C_R = {r <= R, |z| <= R}; shell: C_R minus C_{R/2}; ball: B_R.
struct CylinderDomain {
  double R = 1.0;
  CylinderShape shape = CylinderShape::full;

  void validate() const;  // DomainError unless R > 0 and finite
  bool contains(double r, double z) const;
  double volume() const;  // closed form
  /// Meridian rectangles covering the domain exactly (ball: the bounding
  /// rectangle, integrands are cut by the z-extent per r).
  std::vector<std::array<double, 4>> rectangles() const;  // {r0, r1, z0, z1}
  /// z-extent of the domain at radius r inside rectangle `rect`.
  std::pair<double, double> z_range(const std::array<double, 4>& rect, double r) const;
};

struct LqNorm {
  double value = 0.0;     // (int |f|^q dx)^{1/q}
  double integral = 0.0;  // int |f|^q dx
  double error = 0.0;     // on the integral
  bool divergent = false;
};

/// Adaptive iterated quadrature. q >= 1. A non-finite or non-converged
/// integral is reported as divergent rather than as a number.
LqNorm lq_norm_cylinder(const ScalarFn& f, double q, const CylinderDomain& dom, const quad::Tolerance& tol = {1e-300, 1e-10});

struct GrowthFit {
  std::vector<double> radii;
  std::vector<double> norms;
  std::vector<double> local_exponents;  // between consecutive radii
  double exponent = 0.0;                // least squares over the top four scales
  /// Local exponents approach their limit like R^{-eps}; eps is estimated from
  /// successive differences at the top scales. Log growth has eps -> 0.
  double correction_exponent = 0.0;
  bool logarithmic = false;  // eps < 0.3 and still shrinking: log-type (boundary) growth
};

/// Growth of ||f||_{L^q(dom_R)} across increasing radii (>= 5 of them, > 1).
/// Profiles with mu q within roughly 0.2 of 2 are indistinguishable from the
/// logarithmic boundary case over 2^4..2^14 and are flagged as such.
GrowthFit lq_growth(const ScalarFn& f, double q, CylinderShape shape, std::span<const double> radii);

/// 2^4, 2^5, ..., 2^14.
std::vector<double> default_growth_radii();

struct WeakLorentzEstimate {
  double q = 0.0;
  double value = 0.0;                       // max over the grid of lambda m(lambda)^{1/q}
  double argmax_lambda = 0.0;
  std::vector<double> lambda_grid;          // increasing
  std::vector<double> monotone_envelope;    // m(lambda) = |{|f| >= lambda}|
};

struct WeakLorentzOptions {
  std::size_t levels = 200;        // geometric grid on [min |f|, max |f|]
  std::size_t panels = 16;         // composite Gauss-Kronrod panels per direction (plus axis grading)
  double resolution_tol = 1e-2;    // relative n vs 2n agreement of the value
};

/// The superlevel measures come from a composite 15-point Kronrod tensor grid
/// with the level-set indicator smoothed over each node's cell (|f| linearized
/// there, gradient by central differences); the value is recomputed with doubled panels and a ConvergenceError is
/// thrown when the two disagree beyond resolution_tol or when m(lambda) is not
/// non-increasing. On a geometric grid with ratio c the value is at least
/// sup / c (sup over lambda >= min |f|).
WeakLorentzEstimate weak_lorentz_norm(const ScalarFn& f, double q, const CylinderDomain& dom,
                                      const WeakLorentzOptions& opt = {});

/// Same with an explicit increasing positive lambda grid.
WeakLorentzEstimate weak_lorentz_norm(const ScalarFn& f, double q, const CylinderDomain& dom,
                                      std::span<const double> lambda_grid, const WeakLorentzOptions& opt = {});

// ------------------------------------------------------------------- BMO

/// The three normalized oscillations of g = ln r over C_R:
///   cubic:      R^{-1} (int |g - gbar|^3 dx)^{1/3}
///   two_thirds: R^{-2} (int |g - gbar|^{2/3} dx)^{2/3}
///   twelfth:    R^{-3}  int |g - gbar|^{12} dx
/// gbar is the mean of ln r over the disk of radius R. The last two are
/// evaluated exactly as written, without matching powers and roots.
enum class BmoDisplay { cubic, two_thirds, twelfth };

std::string to_string(BmoDisplay d);

struct BmoResult {
  double value = 0.0;
  double mean = 0.0;        // numeric disk mean of ln r
  double mean_exact = 0.0;  // ln R - 1/2
  double integral = 0.0;    // int over C_R of |g - gbar|^s
};

double disk_mean_ln(double R);
BmoResult bmo_oscillation_ln(double R, BmoDisplay display);

// ---------------------------------------------------------------- energy

/// int over dom of |grad u_r|^2 + |grad u_theta|^2 + |grad u_z|^2
/// + u_r^2/r^2 + u_theta^2/r^2, midpoint rule on cells of size h. Derivatives
/// are exact for fields with derivatives, else central differences with step
/// h; cells with r < h then throw DomainError.
double dirichlet_energy(const AxisymField& field, const CylinderDomain& dom, double h);

}  // namespace axiskit

#pragma once

// Decay envelopes for the meridian kernels and grid scans certifying them.
//
//   |G2| + |G3| <= C / (max{rho,r}^a  dist^{2-a}),      0 <= a <= 1
//   |G1|        <= C |zeta| / (max{rho,r}^a dist^{3-a}), 0 <= a <= 1 near,
//                                                        0 <= a <= 3 inner/outer
//
// with dist^2 = (r - rho)^2 + zeta^2. The constant C is not known a priori;
// scans report the supremum of |G| / envelope per regime and check that it
// is stable under grid refinement.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "axiskit/angular_kernels.hpp"

namespace axiskit {

enum class EnvelopeKind { gamma23, gamma1 };

/// inner: rho < r/4; near: r/4 <= rho < 4r; outer: rho >= 4r.
enum class RadialRegime { inner, near, outer };

std::string to_string(EnvelopeKind k);
std::string to_string(RadialRegime g);
RadialRegime radial_regime(double r, double rho);

struct BoundEnvelope {
  EnvelopeKind kind = EnvelopeKind::gamma23;
  double alpha = 0.0;
};

/// Largest admissible alpha for the kind in the regime.
double alpha_limit(EnvelopeKind kind, RadialRegime regime);
bool alpha_admissible(EnvelopeKind kind, double alpha, RadialRegime regime);

/// Envelope with C = 1. Throws DomainError off the admissible alpha range or
/// on the diagonal.
double envelope_value(const BoundEnvelope& env, double r, double rho, double zeta);

/// Global bounds (rho + r) / dist^3 for G2, G3 and |zeta| / dist^3 for G1.
struct CrudeBounds {
  double gamma23 = 0.0;
  double gamma1 = 0.0;
};
CrudeBounds crude_bounds(double r, double rho, double zeta);

/// Log-spaced grid in r, rho/r and |zeta|/r (both signs of zeta), plus extra
/// rho/r thresholds sampled on both sides, and, per (r, rho), the |zeta|
/// where K = 1. Default thresholds: the regime bounds 1/4 and 4, and
/// 3 -+ 2 sqrt 2, where K = 1 at zeta = 0.
struct ScanGridSpec {
  double r_min = 2.0, r_max = 1e3;
  std::size_t n_r = 8;
  double ratio_min = 1e-2, ratio_max = 1e2;
  std::size_t n_ratio = 41;
  std::vector<double> extra_ratios{0.25, 4.0, 0.17157287525380990, 5.8284271247461901};
  double zeta_ratio_min = 1e-3, zeta_ratio_max = 10.0;
  std::size_t n_zeta = 21;  // per sign

  /// Nested 2x densification: every count n becomes 2n - 1.
  ScanGridSpec refined() const;
  std::size_t size() const;
};

struct GridPoint {
  double r, rho, zeta;
};

std::vector<GridPoint> make_scan_grid(const ScanGridSpec& spec);

struct ScanOptions {
  KernelTolerance tol{1e-10, 0.0, std::size_t{1} << 14};
  double diagonal_margin = 1e-3;  // exclude dist < margin * max{r, rho}
  bool refine = true;
  double stability_threshold = 0.05;
  unsigned workers = 1;
};

struct ScanPoint {
  double r = 0.0, rho = 0.0, zeta = 0.0, K = 0.0;
  RadialRegime regime = RadialRegime::near;
  double kernel = 0.0;    // |G1| or |G2| + |G3|
  double envelope = 0.0;
  double ratio = 0.0;
};

/// Supremum over one (regime, K <= 1 | K > 1) cell.
struct CellSummary {
  RadialRegime regime = RadialRegime::near;
  bool small_k = false;
  std::size_t count = 0;
  double sup = 0.0;
  GridPoint at{0.0, 0.0, 0.0};
  std::size_t refined_count = 0;
  double refined_sup = 0.0;
  double change = 0.0;     // |refined - base| / base
  bool stable = false;
};

struct ScanFailure {
  GridPoint point;
  std::string message;
};

struct ScanReport {
  EnvelopeKind kind = EnvelopeKind::gamma23;
  double alpha = 0.0;
  ScanGridSpec grid;
  bool refined = false;
  std::vector<ScanPoint> points;         // base grid, scanned points only
  std::vector<CellSummary> cells;        // 6 cells, fixed order
  std::vector<ScanFailure> failures;     // both grids
  std::size_t excluded_diagonal = 0;
  std::size_t excluded_regime = 0;       // alpha not admissible there
  std::size_t small_k_violations = 0;    // K <= 1 but dist^2 < max^2 / 2
  std::size_t crude_violations = 0;      // |G| above its crude bound
  double sup = 0.0;
  bool stable = false;                   // every non-empty cell stable
};

/// Throws DomainError when alpha is admissible in no regime.
ScanReport bound_scan(EnvelopeKind kind, double alpha, const ScanGridSpec& grid, const ScanOptions& opt = {});

}  // namespace axiskit

#include "axiskit/kernel_bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "axiskit/error.hpp"
#include "axiskit/parallel.hpp"

namespace axiskit {

std::string to_string(EnvelopeKind k) { return k == EnvelopeKind::gamma23 ? "gamma23" : "gamma1"; }

std::string to_string(RadialRegime g) {
  switch (g) {
    case RadialRegime::inner: return "inner";
    case RadialRegime::near: return "near";
    case RadialRegime::outer: return "outer";
  }
  return "unknown";
}

RadialRegime radial_regime(double r, double rho) {
  if (rho < 0.25 * r) return RadialRegime::inner;
  if (rho < 4.0 * r) return RadialRegime::near;
  return RadialRegime::outer;
}

double alpha_limit(EnvelopeKind kind, RadialRegime regime) {
  if (kind == EnvelopeKind::gamma23 || regime == RadialRegime::near) return 1.0;
  return 3.0;
}

bool alpha_admissible(EnvelopeKind kind, double alpha, RadialRegime regime) {
  return alpha >= 0.0 && alpha <= alpha_limit(kind, regime);
}

double envelope_value(const BoundEnvelope& env, double r, double rho, double zeta) {
  const RadialRegime regime = radial_regime(r, rho);
  if (!alpha_admissible(env.kind, env.alpha, regime))
    throw DomainError("envelope alpha = " + std::to_string(env.alpha) + " not admissible for " + to_string(env.kind) +
                      " in the " + to_string(regime) + " regime");
  const double d2 = (r - rho) * (r - rho) + zeta * zeta;
  if (d2 == 0.0) throw DomainError("envelope_value: diagonal point");
  const double m = std::max(rho, r);
  const double a = env.alpha;
  if (env.kind == EnvelopeKind::gamma23) return 1.0 / (std::pow(m, a) * std::pow(d2, 0.5 * (2.0 - a)));
  return std::abs(zeta) / (std::pow(m, a) * std::pow(d2, 0.5 * (3.0 - a)));
}

CrudeBounds crude_bounds(double r, double rho, double zeta) {
  const double d2 = (r - rho) * (r - rho) + zeta * zeta;
  if (d2 == 0.0) throw DomainError("crude_bounds: diagonal point");
  const double d3 = d2 * std::sqrt(d2);
  return {(rho + r) / d3, std::abs(zeta) / d3};
}

// --------------------------------------------------------------------- grid

namespace {

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  std::vector<double> v;
  if (n == 0) return v;
  if (n == 1) return {lo};
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    v.push_back(i + 1 == n ? hi : std::exp(a + t * (b - a)));
  }
  v.front() = lo;
  return v;
}

std::size_t densify(std::size_t n) { return n <= 1 ? n : 2 * n - 1; }

std::vector<double> ratio_values(const ScanGridSpec& s) {
  std::vector<double> v = log_space(s.ratio_min, s.ratio_max, s.n_ratio);
  // Cell suprema often sit on a threshold approached from one side, so each
  // threshold is sampled on both sides as well.
  for (double x : s.extra_ratios)
    for (double y : {x * (1.0 - 1e-9), x, x * (1.0 + 1e-9)})
      if (y > s.ratio_min && y < s.ratio_max && std::find(v.begin(), v.end(), y) == v.end()) v.push_back(y);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

ScanGridSpec ScanGridSpec::refined() const {
  ScanGridSpec s = *this;
  s.n_r = densify(n_r);
  s.n_ratio = densify(n_ratio);
  s.n_zeta = densify(n_zeta);
  return s;
}

std::size_t ScanGridSpec::size() const { return make_scan_grid(*this).size(); }

std::vector<GridPoint> make_scan_grid(const ScanGridSpec& spec) {
  if (!(spec.r_min > 0.0) || spec.r_max < spec.r_min || !(spec.ratio_min > 0.0) || spec.ratio_max < spec.ratio_min ||
      !(spec.zeta_ratio_min > 0.0) || spec.zeta_ratio_max < spec.zeta_ratio_min)
    throw DomainError("scan grid needs positive, ordered ranges");
  const std::vector<double> rs = log_space(spec.r_min, spec.r_max, spec.n_r);
  const std::vector<double> ratios = ratio_values(spec);
  const std::vector<double> zs = log_space(spec.zeta_ratio_min, spec.zeta_ratio_max, spec.n_zeta);
  std::vector<GridPoint> pts;
  pts.reserve(rs.size() * ratios.size() * zs.size() * 2);
  for (double r : rs)
    for (double q : ratios) {
      std::vector<double> col = zs;
      // The K = 1 boundary, so that K <= 1 cell suprema attained there are
      // on every grid (nudged to the K <= 1 side).
      const double rho = q * r;
      const double k1 = 4.0 * r * rho - (r - rho) * (r - rho);
      if (k1 > 0.0) {
        const double t = std::sqrt(k1) * (1.0 + 1e-14) / r;
        if (t > spec.zeta_ratio_min && t < spec.zeta_ratio_max) col.push_back(t);
      }
      std::sort(col.begin(), col.end());
      for (auto it = col.rbegin(); it != col.rend(); ++it) pts.push_back({r, rho, -(*it) * r});
      for (double t : col) pts.push_back({r, rho, t * r});
    }
  return pts;
}

// --------------------------------------------------------------------- scan

namespace {

enum class Status { ok, diagonal, regime, failed };

struct Evaluated {
  Status status = Status::ok;
  ScanPoint point;
  bool small_k_violation = false;
  bool crude_violation = false;
  std::string message;
};

Evaluated evaluate_point(EnvelopeKind kind, double alpha, const GridPoint& g, const ScanOptions& opt) {
  Evaluated e;
  const double d2 = (g.r - g.rho) * (g.r - g.rho) + g.zeta * g.zeta;
  const double m = std::max(g.r, g.rho);
  if (d2 < opt.diagonal_margin * opt.diagonal_margin * m * m) {
    e.status = Status::diagonal;
    return e;
  }
  const RadialRegime regime = radial_regime(g.r, g.rho);
  if (!alpha_admissible(kind, alpha, regime)) {
    e.status = Status::regime;
    return e;
  }
  ScanPoint& p = e.point;
  p.r = g.r;
  p.rho = g.rho;
  p.zeta = g.zeta;
  p.K = modulus_k(g.r, g.rho, g.zeta);
  p.regime = regime;
  if (p.K <= 1.0 && !(2.0 * d2 >= m * m)) e.small_k_violation = true;
  try {
    const KernelTriple k = kernel_triple(g.r, g.rho, g.zeta, opt.tol);
    const CrudeBounds crude = crude_bounds(g.r, g.rho, g.zeta);
    if (kind == EnvelopeKind::gamma23) {
      p.kernel = std::abs(k.gamma2) + std::abs(k.gamma3);
      const double slack = k.err2 + k.err3 + 1e-12 * crude.gamma23;
      e.crude_violation = std::abs(k.gamma2) > crude.gamma23 + slack || std::abs(k.gamma3) > crude.gamma23 + slack;
    } else {
      p.kernel = std::abs(k.gamma1);
      e.crude_violation = p.kernel > crude.gamma1 * (1.0 + 1e-12) + k.err1;
    }
    p.envelope = envelope_value({kind, alpha}, g.r, g.rho, g.zeta);
    p.ratio = p.kernel / p.envelope;
    if (!std::isfinite(p.ratio)) {
      e.status = Status::failed;
      e.message = "non-finite ratio";
    }
  } catch (const Error& ex) {
    e.status = Status::failed;
    e.message = ex.what();
  }
  return e;
}

std::size_t cell_index(RadialRegime regime, bool small_k) {
  return static_cast<std::size_t>(regime) * 2 + (small_k ? 0 : 1);
}

struct GridOutcome {
  std::vector<Evaluated> evaluated;
  std::vector<GridPoint> grid;
  std::array<CellSummary, 6> cells{};
};

GridOutcome run_grid(EnvelopeKind kind, double alpha, const ScanGridSpec& spec, const ScanOptions& opt) {
  GridOutcome out;
  out.grid = make_scan_grid(spec);
  out.evaluated = parallel_map<Evaluated>(out.grid.size(), opt.workers,
                                          [&](std::size_t i) { return evaluate_point(kind, alpha, out.grid[i], opt); });
  for (std::size_t c = 0; c < 6; ++c) {
    out.cells[c].regime = static_cast<RadialRegime>(c / 2);
    out.cells[c].small_k = (c % 2 == 0);
  }
  // Fixed index order: the supremum location is reproducible.
  for (std::size_t i = 0; i < out.evaluated.size(); ++i) {
    const Evaluated& e = out.evaluated[i];
    if (e.status != Status::ok) continue;
    CellSummary& cell = out.cells[cell_index(e.point.regime, e.point.K <= 1.0)];
    ++cell.count;
    if (e.point.ratio > cell.sup) {
      cell.sup = e.point.ratio;
      cell.at = out.grid[i];
    }
  }
  return out;
}

}  // namespace

ScanReport bound_scan(EnvelopeKind kind, double alpha, const ScanGridSpec& grid, const ScanOptions& opt) {
  if (!alpha_admissible(kind, alpha, RadialRegime::inner) && !alpha_admissible(kind, alpha, RadialRegime::near))
    throw DomainError("bound_scan: alpha = " + std::to_string(alpha) + " admissible in no regime for " +
                      to_string(kind));
  ScanReport rep;
  rep.kind = kind;
  rep.alpha = alpha;
  rep.grid = grid;
  rep.refined = opt.refine;

  GridOutcome base = run_grid(kind, alpha, grid, opt);
  for (std::size_t i = 0; i < base.evaluated.size(); ++i) {
    const Evaluated& e = base.evaluated[i];
    switch (e.status) {
      case Status::ok: rep.points.push_back(e.point); break;
      case Status::diagonal: ++rep.excluded_diagonal; break;
      case Status::regime: ++rep.excluded_regime; break;
      case Status::failed: rep.failures.push_back({base.grid[i], e.message}); break;
    }
    rep.small_k_violations += e.small_k_violation ? 1 : 0;
    rep.crude_violations += e.crude_violation ? 1 : 0;
  }
  rep.cells.assign(base.cells.begin(), base.cells.end());
  for (const CellSummary& c : rep.cells) rep.sup = std::max(rep.sup, c.sup);

  if (opt.refine) {
    GridOutcome fine = run_grid(kind, alpha, grid.refined(), opt);
    for (std::size_t i = 0; i < fine.evaluated.size(); ++i) {
      const Evaluated& e = fine.evaluated[i];
      if (e.status == Status::failed) rep.failures.push_back({fine.grid[i], e.message});
      rep.small_k_violations += e.small_k_violation ? 1 : 0;
      rep.crude_violations += e.crude_violation ? 1 : 0;
    }
    rep.stable = true;
    for (std::size_t c = 0; c < 6; ++c) {
      CellSummary& cell = rep.cells[c];
      cell.refined_count = fine.cells[c].count;
      cell.refined_sup = fine.cells[c].sup;
      if (cell.count == 0) {
        cell.stable = fine.cells[c].count == 0;
      } else {
        cell.change = std::abs(cell.refined_sup - cell.sup) / cell.sup;
        cell.stable = cell.change < opt.stability_threshold;
      }
      rep.stable = rep.stable && (cell.count == 0 || cell.stable);
    }
  }
  return rep;
}

}  // namespace axiskit

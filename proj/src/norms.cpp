#include "axiskit/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "axiskit/angular_kernels.hpp"
#include "axiskit/error.hpp"

namespace axiskit {

std::string to_string(CylinderShape s) {
  switch (s) {
    case CylinderShape::full: return "full";
    case CylinderShape::shell: return "shell";
    case CylinderShape::ball: return "ball";
  }
  return "unknown";
}

std::string to_string(BmoDisplay d) {
  switch (d) {
    case BmoDisplay::cubic: return "cubic";
    case BmoDisplay::two_thirds: return "two_thirds";
    case BmoDisplay::twelfth: return "twelfth";
  }
  return "unknown";
}

// ----------------------------------------------------------------- domain

void CylinderDomain::validate() const {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("cylinder domain: R must be positive and finite");
}

bool CylinderDomain::contains(double r, double z) const {
  if (r < 0.0) return false;
  switch (shape) {
    case CylinderShape::full: return r <= R && std::abs(z) <= R;
    case CylinderShape::shell: return r <= R && std::abs(z) <= R && !(r <= 0.5 * R && std::abs(z) <= 0.5 * R);
    case CylinderShape::ball: return r * r + z * z <= R * R;
  }
  return false;
}

double CylinderDomain::volume() const {
  switch (shape) {
    case CylinderShape::full: return 2.0 * kPi * R * R * R;
    case CylinderShape::shell: return 2.0 * kPi * R * R * R * (7.0 / 8.0);
    case CylinderShape::ball: return 4.0 / 3.0 * kPi * R * R * R;
  }
  return 0.0;
}

std::vector<std::array<double, 4>> CylinderDomain::rectangles() const {
  const double h = 0.5 * R;
  switch (shape) {
    case CylinderShape::full:
    case CylinderShape::ball: return {{0.0, R, -R, R}};
    case CylinderShape::shell: return {{0.0, h, h, R}, {0.0, h, -R, -h}, {h, R, -R, R}};
  }
  return {};
}

std::pair<double, double> CylinderDomain::z_range(const std::array<double, 4>& rect, double r) const {
  if (shape != CylinderShape::ball) return {rect[2], rect[3]};
  const double e = std::sqrt(std::max(0.0, R * R - r * r));
  return {-e, e};
}

// ------------------------------------------------------------------- L^q

namespace {

std::vector<double> radial_breakpoints(double a, double b) {
  std::vector<double> pts;
  quad::append_geometric(pts, 0.0, 1.0, a, b);
  for (int k = 1; k <= 10; ++k) pts.push_back(std::ldexp(b, -k));
  return quad::make_breakpoints(a, b, pts);
}

}  // namespace

LqNorm lq_norm_cylinder(const ScalarFn& f, double q, const CylinderDomain& dom, const quad::Tolerance& tol) {
  dom.validate();
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("lq_norm_cylinder: q must be >= 1");
  LqNorm out;
  bool ok = true;
  quad::Options opt;
  opt.tol = tol;
  quad::Options inner = opt;
  inner.tol.rel = 0.1 * tol.rel;
  for (const auto& rect : dom.rectangles()) {
    const std::vector<double> rbp = radial_breakpoints(rect[0], rect[1]);
    const quad::Result res = quad::integrate(
        [&](double r) {
          const auto [z0, z1] = dom.z_range(rect, r);
          if (!(z1 > z0)) return 0.0;
          std::vector<double> zp{0.0};
          const std::vector<double> zbp = quad::make_breakpoints(z0, z1, zp);
          const quad::Result in =
              quad::integrate([&](double z) { return std::pow(std::abs(f(r, z)), q); }, std::span<const double>(zbp), inner);
          if (!in.converged || !std::isfinite(in.value)) ok = false;
          return 2.0 * kPi * r * in.value;
        },
        std::span<const double>(rbp), opt);
    if (!res.converged || !std::isfinite(res.value)) ok = false;
    out.integral += res.value;
    out.error += res.error;
  }
  out.divergent = !ok;
  out.value = ok ? std::pow(out.integral, 1.0 / q) : std::numeric_limits<double>::infinity();
  return out;
}

std::vector<double> default_growth_radii() {
  std::vector<double> r;
  for (int k = 4; k <= 14; ++k) r.push_back(std::ldexp(1.0, k));
  return r;
}

GrowthFit lq_growth(const ScalarFn& f, double q, CylinderShape shape, std::span<const double> radii) {
  if (radii.size() < 5) throw DomainError("lq_growth: need at least 5 radii");
  GrowthFit g;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 1.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw DomainError("lq_growth: radii must be increasing and > 1");
    const LqNorm n = lq_norm_cylinder(f, q, {radii[i], shape});
    if (n.divergent) throw ConvergenceError("lq_growth: divergent integral at R = " + std::to_string(radii[i]), n.integral, n.error);
    g.radii.push_back(radii[i]);
    g.norms.push_back(n.value);
  }
  for (std::size_t i = 1; i < g.radii.size(); ++i)
    g.local_exponents.push_back(std::log(g.norms[i] / g.norms[i - 1]) / std::log(g.radii[i] / g.radii[i - 1]));

  // Least squares over the four largest scales: far enough out that the
  // (1 + r) offsets no longer bend the log-log line.
  const std::size_t n = g.radii.size(), first = n - 4;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i < n; ++i) {
    const double x = std::log(g.radii[i]), y = std::log(g.norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  g.exponent = (4.0 * sxy - sx * sy) / (4.0 * sxx - sx * sx);

  // Ratios of successive local-exponent differences, last two of them.
  const auto& e = g.local_exponents;
  if (e.size() >= 4) {
    const std::size_t m = e.size();
    const double d1 = e[m - 3] - e[m - 4], d2 = e[m - 2] - e[m - 3], d3 = e[m - 1] - e[m - 2];
    const double step = std::log2(g.radii[n - 1] / g.radii[n - 2]);
    if (std::abs(d2) > 1e-9 && std::abs(d1) > 1e-9) {
      const double q1 = d2 / d1, q2 = d3 / d2;
      if (q2 > 0.0) g.correction_exponent = -std::log2(q2) / step;
      g.logarithmic = q2 > 0.0 && q2 < 1.0 && g.correction_exponent < 0.3 && q2 > q1;
    }
  }
  return g;
}

// ----------------------------------------------------------- weak Lorentz

namespace {

struct WeightedSamples {
  std::vector<double> value;   // |f|
  std::vector<double> weight;  // 2 pi r dr dz
  std::vector<double> spread;  // variation of |f| across the node's cell
};

// 15-point Kronrod nodes/weights on [a, b] split into n equal panels. With
// `axis` set the first panel is further split dyadically toward a, so level
// sets that are thin disks around the axis still see many nodes.
void composite_nodes(double a, double b, std::size_t n, std::vector<double>& x, std::vector<double>& w,
                     bool axis = false) {
  x.clear();
  w.clear();
  const double h = (b - a) / static_cast<double>(n);
  std::vector<double> edges;
  if (axis) {
    for (int k = 16; k >= 1; --k) edges.push_back(a + std::ldexp(h, -k));
  }
  for (std::size_t p = 1; p <= n; ++p) edges.push_back(p == n ? b : a + static_cast<double>(p) * h);
  double left = a;
  for (double right : edges) {
    const double c = 0.5 * (left + right), hw = 0.5 * (right - left);
    for (std::size_t k = 0; k < 8; ++k) {
      x.push_back(c - hw * quad::kKronrodNodes[k]);
      w.push_back(hw * quad::kKronrodWeights[k]);
      if (k < 7) {
        x.push_back(c + hw * quad::kKronrodNodes[k]);
        w.push_back(hw * quad::kKronrodWeights[k]);
      }
    }
    left = right;
  }
}

// Each node stands for a cell of size (dr, dz) = its two quadrature weights.
// The level-set indicator is smoothed by linearizing |f| over that cell: the
// node contributes the fraction clamp(1/2 + (|f| - lambda) / spread) of its
// weight, spread = |d_r f| dr + |d_z f| dz. This is exact for f linear in one
// variable and removes the first-order error of a hard indicator.
WeightedSamples sample_domain(const ScalarFn& f, const CylinderDomain& dom, std::size_t panels) {
  WeightedSamples s;
  std::vector<double> rx, rw, zx, zw;
  auto g = [&](double r, double z) { return std::abs(f(r, z)); };
  for (const auto& rect : dom.rectangles()) {
    composite_nodes(rect[0], rect[1], panels, rx, rw, rect[0] == 0.0);
    for (std::size_t i = 0; i < rx.size(); ++i) {
      const auto [z0, z1] = dom.z_range(rect, rx[i]);
      if (!(z1 > z0)) continue;
      composite_nodes(z0, z1, panels, zx, zw);
      const double hr = 1e-3 * rw[i];
      for (std::size_t j = 0; j < zx.size(); ++j) {
        const double r = rx[i], z = zx[j], hz = 1e-3 * zw[j];
        const double v = g(r, z);
        const double dr = r > hr ? (g(r + hr, z) - g(r - hr, z)) / (2 * hr) : (g(r + hr, z) - v) / hr;
        const double dz = (g(r, z + hz) - g(r, z - hz)) / (2 * hz);
        s.value.push_back(v);
        s.weight.push_back(2.0 * kPi * r * rw[i] * zw[j]);
        s.spread.push_back(std::abs(dr) * rw[i] + std::abs(dz) * zw[j]);
      }
    }
  }
  return s;
}

// m(lambda) for every lambda of the (increasing) grid.
std::vector<double> superlevel_measures(const WeightedSamples& s, std::span<const double> grid) {
  const std::size_t n = s.value.size();
  // Nodes whose whole cell lies above lambda: swept in decreasing order of
  // the cell minimum. Partially covered cells are added explicitly.
  std::vector<double> lo(n);
  for (std::size_t k = 0; k < n; ++k) lo[k] = s.value[k] - 0.5 * s.spread[k];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo[a] > lo[b]; });
  std::vector<double> m(grid.size(), 0.0);
  double acc = 0.0;
  std::size_t pos = 0;
  for (std::size_t g = grid.size(); g-- > 0;) {
    while (pos < n && lo[order[pos]] >= grid[g]) acc += s.weight[order[pos++]];
    m[g] = acc;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double sp = s.spread[k];
    if (!(sp > 0.0)) continue;
    const double hi = s.value[k] + 0.5 * sp;
    auto it = std::upper_bound(grid.begin(), grid.end(), lo[k]);
    for (; it != grid.end() && *it < hi; ++it)
      m[static_cast<std::size_t>(it - grid.begin())] += s.weight[k] * (0.5 + (s.value[k] - *it) / sp);
  }
  return m;
}

WeakLorentzEstimate evaluate_weak(double q, std::span<const double> grid, const std::vector<double>& m) {
  WeakLorentzEstimate e;
  e.q = q;
  e.lambda_grid.assign(grid.begin(), grid.end());
  e.monotone_envelope = m;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = grid[i] * std::pow(m[i], 1.0 / q);
    if (v > e.value) {
      e.value = v;
      e.argmax_lambda = grid[i];
    }
  }
  return e;
}

WeakLorentzEstimate weak_impl(const ScalarFn& f, double q, const CylinderDomain& dom, std::vector<double> grid,
                              const WeakLorentzOptions& opt, const WeightedSamples& coarse) {
  const WeightedSamples fine = sample_domain(f, dom, 2 * opt.panels);
  const std::vector<double> m_coarse = superlevel_measures(coarse, grid);
  const std::vector<double> m_fine = superlevel_measures(fine, grid);
  for (std::size_t i = 1; i < m_fine.size(); ++i)
    if (m_fine[i] > m_fine[i - 1] * (1.0 + 1e-12))
      throw ConvergenceError("weak_lorentz_norm: distribution function not monotone", 0.0, 0.0);
  const WeakLorentzEstimate a = evaluate_weak(q, grid, m_coarse);
  WeakLorentzEstimate b = evaluate_weak(q, grid, m_fine);
  const double diff = std::abs(a.value - b.value);
  if (diff > opt.resolution_tol * b.value)
    throw ConvergenceError("weak_lorentz_norm: level sets under-resolved (relative change " +
                               std::to_string(diff / b.value) + " under panel doubling)",
                           b.value, diff);
  return b;
}

void check_weak_args(double q, const CylinderDomain& dom, const WeakLorentzOptions& opt) {
  dom.validate();
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("weak_lorentz_norm: q must be >= 1");
  if (opt.panels == 0 || opt.levels == 0) throw DomainError("weak_lorentz_norm: panels and levels must be positive");
}

}  // namespace

WeakLorentzEstimate weak_lorentz_norm(const ScalarFn& f, double q, const CylinderDomain& dom,
                                      const WeakLorentzOptions& opt) {
  check_weak_args(q, dom, opt);
  const WeightedSamples coarse = sample_domain(f, dom, opt.panels);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double v : coarse.value) {
    if (!std::isfinite(v)) throw DomainError("weak_lorentz_norm: non-finite sample");
    hi = std::max(hi, v);
    if (v > 0.0) lo = std::min(lo, v);
  }
  if (hi == 0.0) {
    WeakLorentzEstimate e;
    e.q = q;
    return e;
  }
  std::vector<double> grid;
  if (opt.levels == 1 || lo == hi) {
    grid.push_back(hi);
  } else {
    const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(opt.levels - 1));
    for (std::size_t i = 0; i < opt.levels; ++i) grid.push_back(i + 1 == opt.levels ? hi : lo * std::pow(ratio, static_cast<double>(i)));
  }
  return weak_impl(f, q, dom, grid, opt, coarse);
}

WeakLorentzEstimate weak_lorentz_norm(const ScalarFn& f, double q, const CylinderDomain& dom,
                                      std::span<const double> lambda_grid, const WeakLorentzOptions& opt) {
  check_weak_args(q, dom, opt);
  if (lambda_grid.empty()) throw DomainError("weak_lorentz_norm: empty lambda grid");
  for (std::size_t i = 0; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i] > 0.0) || (i > 0 && !(lambda_grid[i] > lambda_grid[i - 1])))
      throw DomainError("weak_lorentz_norm: lambda grid must be positive and increasing");
  const WeightedSamples coarse = sample_domain(f, dom, opt.panels);
  return weak_impl(f, q, dom, {lambda_grid.begin(), lambda_grid.end()}, opt, coarse);
}

// -------------------------------------------------------------------- BMO

namespace {

// 2 int_0^1 t ln t dt, numerically; the disk mean of ln r is ln R plus this.
double unit_disk_log_offset() {
  quad::Options opt;
  opt.tol = {1e-300, 1e-14};
  std::vector<double> pts;
  for (int k = 1; k <= 40; ++k) pts.push_back(std::ldexp(1.0, -k));
  const std::vector<double> bp = quad::make_breakpoints(0.0, 1.0, pts);
  return 2.0 * quad::integrate([](double t) { return t * std::log(t); }, std::span<const double>(bp), opt).value;
}

}  // namespace

double disk_mean_ln(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("disk_mean_ln: R must be positive");
  return std::log(R) + unit_disk_log_offset();
}

BmoResult bmo_oscillation_ln(double R, BmoDisplay display) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("bmo_oscillation_ln: R must be positive");
  BmoResult out;
  const double offset = unit_disk_log_offset();
  out.mean = std::log(R) + offset;
  out.mean_exact = std::log(R) - 0.5;
  const double s = display == BmoDisplay::cubic ? 3.0 : display == BmoDisplay::two_thirds ? 2.0 / 3.0 : 12.0;

  // With r = R t: ln r - gbar = ln t - offset, and the cylinder integral is
  // 2R * 2 pi R^2 * int_0^1 |ln t - offset|^s t dt.
  quad::Options opt;
  opt.tol = {1e-300, 1e-13};
  std::vector<double> pts{std::exp(offset)};
  for (int k = 1; k <= 60; ++k) pts.push_back(std::ldexp(1.0, -k));
  const std::vector<double> bp = quad::make_breakpoints(0.0, 1.0, pts);
  const double J =
      quad::integrate([&](double t) { return std::pow(std::abs(std::log(t) - offset), s) * t; }, std::span<const double>(bp), opt)
          .value;
  out.integral = 4.0 * kPi * R * R * R * J;
  switch (display) {
    case BmoDisplay::cubic: out.value = std::cbrt(out.integral) / R; break;
    case BmoDisplay::two_thirds: out.value = std::pow(out.integral, 2.0 / 3.0) / (R * R); break;
    case BmoDisplay::twelfth: out.value = out.integral / (R * R * R); break;
  }
  return out;
}

// ----------------------------------------------------------------- energy

namespace {

// (f, f_r, f_z) at (r, z).
std::array<double, 3> value_and_gradient(const Profile& p, double r, double z, double h) {
  if (p.is_zero()) return {0.0, 0.0, 0.0};
  if (p.has_derivatives()) {
    const Jet<2> j = p.jet(r, z);
    return {j.value(), j.d_r(), j.d_z()};
  }
  return {p(r, z), (p(r + h, z) - p(r - h, z)) / (2.0 * h), (p(r, z + h) - p(r, z - h)) / (2.0 * h)};
}

}  // namespace

double dirichlet_energy(const AxisymField& field, const CylinderDomain& dom, double h) {
  dom.validate();
  if (!(h > 0.0) || h > dom.R) throw DomainError("dirichlet_energy: need 0 < h <= R");
  const bool exact = field.has_derivatives();
  double total = 0.0;
  for (const auto& rect : dom.rectangles()) {
    const auto nr = static_cast<std::size_t>(std::ceil((rect[1] - rect[0]) / h - 1e-9));
    const double hr = (rect[1] - rect[0]) / static_cast<double>(nr);
    for (std::size_t i = 0; i < nr; ++i) {
      const double r = rect[0] + (static_cast<double>(i) + 0.5) * hr;
      const auto [z0, z1] = dom.z_range(rect, r);
      if (!(z1 > z0)) continue;
      const auto nz = static_cast<std::size_t>(std::ceil((z1 - z0) / h - 1e-9));
      const double hz = (z1 - z0) / static_cast<double>(nz);
      double column = 0.0;
      for (std::size_t j = 0; j < nz; ++j) {
        const double z = z0 + (static_cast<double>(j) + 0.5) * hz;
        if (!exact && r < h) throw DomainError("dirichlet_energy: cells with r < h need exact derivatives");
        const auto ur = value_and_gradient(field.u_r, r, z, h);
        const auto ut = value_and_gradient(field.u_theta, r, z, h);
        const auto uz = value_and_gradient(field.u_z, r, z, h);
        double e = 0.0;
        for (const auto* g : {&ur, &ut, &uz}) e += (*g)[1] * (*g)[1] + (*g)[2] * (*g)[2];
        e += (ur[0] * ur[0] + ut[0] * ut[0]) / (r * r);
        column += e * hz;
      }
      total += 2.0 * kPi * r * column * hr;
    }
  }
  return total;
}

}  // namespace axiskit

#include "axiskit/angular_kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "axiskit/error.hpp"
#include "axiskit/quadrature.hpp"
#include "axiskit/simd/angular_moments.hpp"

namespace axiskit {

namespace {

constexpr double kHalfPi = 0.5 * kPi;
constexpr int kLevels = 64;

// 15 Gauss-Kronrod nodes of one panel, padded to 16 with a zero-weight slot.
struct PanelNodes {
  alignas(32) double s[16];
  alignas(32) double c[16];
  alignas(32) double wk[16];
  alignas(32) double wg[16];

  simd::NodeBlock block() const { return {s, c, wk, wg, 16}; }
};

void fill_panel(PanelNodes& p, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto set = [&](int i, double x, double wk, double wg) {
    const double sx = std::sin(x);
    p.s[i] = sx * sx;
    p.c[i] = std::cos(2.0 * x);
    p.wk[i] = wk * half;
    p.wg[i] = wg * half;
  };
  for (int j = 0; j < 7; ++j) {
    const double dx = half * quad::kKronrodNodes[j];
    const double wg = (j % 2 == 1) ? quad::kGaussWeights[j / 2] : 0.0;
    set(j, center - dx, quad::kKronrodWeights[j], wg);
    set(14 - j, center + dx, quad::kKronrodWeights[j], wg);
  }
  set(7, center, quad::kKronrodWeights[7], quad::kGaussWeights[3]);
  p.s[15] = 0.5;
  p.c[15] = 0.0;
  p.wk[15] = 0.0;
  p.wg[15] = 0.0;
}

// Fixed dyadic partition of [0, pi/2]: ring j = [2^{-(j+1)}, 2^{-j}] * pi/2
// and head j = [0, 2^{-j}] * pi/2. Built once, read-only afterwards.
struct NodeTables {
  std::array<PanelNodes, kLevels> ring{};
  std::array<PanelNodes, kLevels> head{};

  NodeTables() {
    for (int j = 0; j < kLevels; ++j) {
      const double hi = std::ldexp(kHalfPi, -j);
      fill_panel(ring[j], 0.5 * hi, hi);
      fill_panel(head[j], 0.0, hi);
    }
  }
};

const NodeTables& tables() {
  static const NodeTables t;
  return t;
}

struct Panel {
  double a = 0.0, b = 0.0;
  double m0 = 0.0, ms = 0.0, mc = 0.0;
  double e0 = 0.0, es = 0.0, ec = 0.0;

  double worst() const { return std::max({e0, es, ec}); }
  bool operator<(const Panel& o) const { return worst() < o.worst(); }
};

Panel evaluate(const PanelNodes& nodes, double a, double b, double d2, double bb) {
  const simd::MomentSums m = simd::angular_moments(nodes.block(), d2, bb);
  // Every integrand is bounded by D^{-3/2} (0 <= s <= 1, |c| <= 1), so the
  // Kronrod sum of m0 serves as the absolute scale of all three.
  const double scale = m.m0_k;
  Panel p{a, b, m.m0_k, m.ms_k, m.mc_k, 0.0, 0.0, 0.0};
  p.e0 = quad::qk_error(m.m0_k, m.m0_g, scale, scale);
  p.es = quad::qk_error(m.ms_k, m.ms_g, scale, scale);
  p.ec = quad::qk_error(m.mc_k, m.mc_g, scale, scale);
  return p;
}

int initial_levels(double K) {
  if (K <= 4.0) return 1;
  const int j = static_cast<int>(std::ceil(0.5 * std::log2(K))) + 1;
  return std::clamp(j, 1, kLevels - 1);
}

}  // namespace

AngularMoments angular_moments(double d2, double b, const KernelTolerance& tol) {
  if (!(d2 > 0.0) || !(b >= 0.0) || !std::isfinite(d2) || !std::isfinite(b))
    throw DomainError("angular moments need d2 > 0 and b >= 0");
  AngularMoments out;
  if (b == 0.0) {
    // Integrand constant in psi.
    out.m0 = kHalfPi / (d2 * std::sqrt(d2));
    out.ms = 0.5 * out.m0;
    out.mc = 0.0;
    return out;
  }
  const NodeTables& t = tables();
  const int levels = initial_levels(b / d2);

  std::priority_queue<Panel> heap;
  double tot0 = 0.0, err_total = 0.0;
  auto push = [&](const Panel& p) {
    tot0 += p.m0;
    err_total += p.worst();
    heap.push(p);
  };
  push(evaluate(t.head[levels], 0.0, std::ldexp(kHalfPi, -levels), d2, b));
  for (int j = levels - 1; j >= 0; --j) {
    const double hi = std::ldexp(kHalfPi, -j);
    push(evaluate(t.ring[j], 0.5 * hi, hi, d2, b));
  }

  PanelNodes scratch;
  bool exhausted = false;
  while (err_total > std::max(tol.abs, tol.rel * tot0)) {
    if (heap.size() >= tol.max_panels) {
      exhausted = true;
      break;
    }
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      exhausted = true;
      break;
    }
    heap.pop();
    tot0 -= worst.m0;
    err_total -= worst.worst();
    fill_panel(scratch, worst.a, mid);
    push(evaluate(scratch, worst.a, mid, d2, b));
    fill_panel(scratch, mid, worst.b);
    push(evaluate(scratch, mid, worst.b, d2, b));
  }

  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : panels) {
    out.m0 += p.m0;
    out.ms += p.ms;
    out.mc += p.mc;
    out.err0 += p.e0;
    out.errs += p.es;
    out.errc += p.ec;
  }
  out.panels = panels.size();
  const double target = std::max(tol.abs, tol.rel * out.m0);
  if (exhausted && std::max({out.err0, out.errs, out.errc}) > target)
    throw ConvergenceError("angular moments: panel budget exhausted", out.m0, out.err0);
  return out;
}

double modulus_k(double r, double rho, double zeta) {
  const double d2 = (r - rho) * (r - rho) + zeta * zeta;
  if (d2 == 0.0) return std::numeric_limits<double>::infinity();
  return 4.0 * r * rho / d2;
}

KernelTriple kernel_triple(double r, double rho, double zeta, const KernelTolerance& tol) {
  if (!(r >= 0.0) || !(rho >= 0.0) || !std::isfinite(zeta))
    throw DomainError("kernel_triple needs r >= 0, rho >= 0 and finite zeta");
  const double dr = r - rho;
  const double d2 = dr * dr + zeta * zeta;
  if (d2 == 0.0) throw DomainError("kernel_triple: diagonal point (rho = r, zeta = 0)");
  const AngularMoments m = angular_moments(d2, 4.0 * r * rho, tol);
  KernelTriple k;
  k.gamma1 = zeta * m.mc / kPi;
  k.gamma2 = -(-dr * m.m0 + 2.0 * r * m.ms) / kPi;
  k.gamma3 = (dr * m.m0 + 2.0 * rho * m.ms) / kPi;
  k.err1 = std::abs(zeta) * m.errc / kPi;
  k.err2 = (std::abs(dr) * m.err0 + 2.0 * r * m.errs) / kPi;
  k.err3 = (std::abs(dr) * m.err0 + 2.0 * rho * m.errs) / kPi;
  k.panels = m.panels;
  return k;
}

AngularIntegralValue angular_integral(const AngularIntegralSpec& spec) {
  if (!(spec.K >= 0.0) || !std::isfinite(spec.K)) throw DomainError("angular_integral: K must be finite and >= 0");
  if (!(spec.beta >= 1.0)) throw DomainError("angular_integral: beta must be >= 1");
  if (!(spec.tol > 0.0)) throw DomainError("angular_integral: tolerance must be positive");
  if (spec.K == 0.0) return {kHalfPi, 0.0, 1};
  const double K = spec.K, half_beta = 0.5 * spec.beta;
  auto f = [K, half_beta](double phi) {
    const double s = std::sin(phi);
    return std::pow(1.0 + K * s * s, -half_beta);
  };
  const int levels = initial_levels(K);
  std::vector<double> bp{0.0};
  for (int j = levels; j >= 0; --j) bp.push_back(std::ldexp(kHalfPi, -j));
  quad::Options opt;
  opt.tol = {spec.tol, 0.0};
  opt.max_panels = spec.max_panels;
  const quad::Result res = quad::integrate(f, std::span<const double>(bp), opt);
  if (!res.converged)
    throw ConvergenceError("angular_integral: tolerance " + std::to_string(spec.tol) + " not reached",
                           res.value, res.error);
  return {res.value, res.error, res.panels};
}

double angular_bound_ratio(const AngularIntegralSpec& spec, double delta) {
  const AngularIntegralValue v = angular_integral(spec);
  double envelope = 1.0;
  if (spec.beta == 1.0) {
    if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("angular_bound_ratio: beta = 1 needs 0 <= delta < 1");
    envelope = std::min(1.0, std::pow(spec.K, -0.5 * delta));
  } else {
    envelope = std::min(1.0, 1.0 / std::sqrt(spec.K));
  }
  return v.value / envelope;
}

}  // namespace axiskit

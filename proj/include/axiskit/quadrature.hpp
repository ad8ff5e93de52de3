#pragma once

// Adaptive Gauss-Kronrod (7/15) integration on finite intervals, with
// caller-supplied initial breakpoints. Error estimation follows the QUADPACK
// qk15 heuristic; subdivision always bisects the panel with the largest
// estimated error.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace axiskit::quad {

// Abscissae of the 15-point Kronrod rule on [-1, 1] (non-negative half,
// descending); odd indices are the 7-point Gauss abscissae.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Weights of the embedded 7-point Gauss rule at kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;

  double target(double value) const { return std::max(abs, rel * std::abs(value)); }
};

struct Options {
  Tolerance tol;
  std::size_t max_panels = std::size_t{1} << 14;
};

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
  bool converged = true;
};

/// QUADPACK-style error estimate from Kronrod/Gauss results and the
/// absolute/oscillation sums of one panel.
inline double qk_error(double kronrod, double gauss, double resabs, double resasc) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  double err = std::abs(kronrod - gauss);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return err;
}

/// One 15-point Gauss-Kronrod panel on [a, b].
template <class F>
PanelEstimate gk15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv{};
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  double resk = kKronrodWeights[7] * fv[7];
  double resg = kGaussWeights[3] * fv[7];
  double resabs = kKronrodWeights[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    const double pair = fv[j] + fv[14 - j];
    resk += kKronrodWeights[j] * pair;
    resabs += kKronrodWeights[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) resg += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = kKronrodWeights[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) resasc += kKronrodWeights[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  const double ah = std::abs(half);
  return {resk * half, qk_error(resk * half, resg * half, resabs * ah, resasc * ah)};
}

namespace detail {
struct Panel {
  double a, b;
  PanelEstimate est;
  bool operator<(const Panel& o) const { return est.error < o.est.error; }
};
}  // namespace detail

/// Adaptive integration over the partition given by `breakpoints` (sorted,
/// endpoints included, at least two entries). Never throws; `converged` is
/// false when the panel budget ran out first.
template <class F>
Result integrate(F&& f, std::span<const double> breakpoints, const Options& opt = {}) {
  Result res;
  if (breakpoints.size() < 2) return res;
  std::priority_queue<detail::Panel> heap;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b > a)) continue;
    detail::Panel p{a, b, gk15(f, a, b)};
    total += p.est.value;
    total_err += p.est.error;
    res.evaluations += 15;
    heap.push(p);
  }
  while (!heap.empty() && total_err > opt.tol.target(total)) {
    if (heap.size() >= opt.max_panels) {
      res.converged = false;
      break;
    }
    const detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in floating point.
      res.converged = false;
      break;
    }
    heap.pop();
    detail::Panel left{worst.a, mid, gk15(f, worst.a, mid)};
    detail::Panel right{mid, worst.b, gk15(f, mid, worst.b)};
    res.evaluations += 30;
    total += left.est.value + right.est.value - worst.est.value;
    total_err += left.est.error + right.est.error - worst.est.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum in a fixed (left-to-right) order to remove drift from the
  // incremental updates.
  std::vector<detail::Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  res.value = 0.0;
  res.error = 0.0;
  for (const auto& p : panels) {
    res.value += p.est.value;
    res.error += p.est.error;
  }
  res.panels = panels.size();
  if (res.error > opt.tol.target(res.value)) res.converged = false;
  return res;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  const std::array<double, 2> bp{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(bp), opt);
}

/// Integral over [a, inf) through x = a + (1 - t) / t, t in (0, 1].
template <class F>
Result integrate_to_infinity(F&& f, double a, const Options& opt = {}) {
  auto g = [&](double t) {
    const double x = a + (1.0 - t) / t;
    return f(x) / (t * t);
  };
  std::vector<double> bp{0.0};
  for (int k = 30; k >= 1; --k) bp.push_back(std::ldexp(1.0, -k));
  bp.push_back(1.0);
  return integrate(g, std::span<const double>(bp), opt);
}

/// Vector-valued variant: f returns std::array<double, N>; all components
/// share the partition. Only the first `controlled` components drive
/// subdivision and convergence (the rest are integrated passively, e.g.
/// error densities of an inner integral).
template <std::size_t N>
struct ResultN {
  std::array<double, N> value{};
  std::array<double, N> error{};
  std::size_t panels = 0;
  bool converged = true;
};

namespace detail {
template <std::size_t N>
struct PanelN {
  double a, b;
  std::array<double, N> value, error;
  double weight;  // summed error of the controlled components
  bool operator<(const PanelN& o) const { return weight < o.weight; }
};

template <std::size_t N, class F>
PanelN<N> gk15_n(F& f, double a, double b, std::size_t controlled) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<std::array<double, N>, 15> fv;
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  PanelN<N> p{a, b, {}, {}, 0.0};
  const double ah = std::abs(half);
  for (std::size_t c = 0; c < N; ++c) {
    double resk = kKronrodWeights[7] * fv[7][c];
    double resg = kGaussWeights[3] * fv[7][c];
    double resabs = kKronrodWeights[7] * std::abs(fv[7][c]);
    for (int j = 0; j < 7; ++j) {
      const double pair = fv[j][c] + fv[14 - j][c];
      resk += kKronrodWeights[j] * pair;
      resabs += kKronrodWeights[j] * (std::abs(fv[j][c]) + std::abs(fv[14 - j][c]));
      if (j % 2 == 1) resg += kGaussWeights[j / 2] * pair;
    }
    const double mean = 0.5 * resk;
    double resasc = kKronrodWeights[7] * std::abs(fv[7][c] - mean);
    for (int j = 0; j < 7; ++j)
      resasc += kKronrodWeights[j] * (std::abs(fv[j][c] - mean) + std::abs(fv[14 - j][c] - mean));
    p.value[c] = resk * half;
    p.error[c] = qk_error(resk * half, resg * half, resabs * ah, resasc * ah);
    if (c < controlled) p.weight += p.error[c];
  }
  return p;
}
}  // namespace detail

/// Convergence: summed controlled error <= tol.target(summed |controlled value|).
template <std::size_t N, class F>
ResultN<N> integrate_n(F&& f, std::span<const double> breakpoints, const Options& opt = {},
                       std::size_t controlled = N) {
  ResultN<N> res;
  if (breakpoints.size() < 2) return res;
  std::priority_queue<detail::PanelN<N>> heap;
  std::array<double, N> total{};
  double weight = 0.0;
  auto add = [&](const detail::PanelN<N>& p, double sign) {
    for (std::size_t c = 0; c < N; ++c) total[c] += sign * p.value[c];
    weight += sign * p.weight;
  };
  auto scale = [&] {
    double s = 0.0;
    for (std::size_t c = 0; c < controlled; ++c) s += std::abs(total[c]);
    return s;
  };
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b > a)) continue;
    detail::PanelN<N> p = detail::gk15_n<N>(f, a, b, controlled);
    add(p, 1.0);
    heap.push(p);
  }
  while (!heap.empty() && weight > opt.tol.target(scale())) {
    if (heap.size() >= opt.max_panels) {
      res.converged = false;
      break;
    }
    const detail::PanelN<N> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      res.converged = false;
      break;
    }
    heap.pop();
    add(worst, -1.0);
    detail::PanelN<N> left = detail::gk15_n<N>(f, worst.a, mid, controlled);
    detail::PanelN<N> right = detail::gk15_n<N>(f, mid, worst.b, controlled);
    add(left, 1.0);
    add(right, 1.0);
    heap.push(left);
    heap.push(right);
  }
  std::vector<detail::PanelN<N>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  double w = 0.0, sc = 0.0;
  for (const auto& p : panels) {
    for (std::size_t c = 0; c < N; ++c) {
      res.value[c] += p.value[c];
      res.error[c] += p.error[c];
    }
    w += p.weight;
  }
  for (std::size_t c = 0; c < controlled; ++c) sc += std::abs(res.value[c]);
  res.panels = panels.size();
  if (w > opt.tol.target(sc)) res.converged = false;
  return res;
}

/// Sorted, de-duplicated breakpoints clipped to [a, b] (endpoints included).
std::vector<double> make_breakpoints(double a, double b, std::vector<double> interior);

/// Geometric grading toward `center` inside [a, b]: center +- scale * 2^k for
/// k = 0, 1, ... until the interval ends, plus center itself when inside.
void append_geometric(std::vector<double>& pts, double center, double scale, double a, double b);

}  // namespace axiskit::quad

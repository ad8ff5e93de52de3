#include "axiskit/rate_calculus.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "axiskit/error.hpp"

namespace axiskit {

// ------------------------------------------------------------- feasibility

namespace {

double lower_limit(double mu, double delta) { return std::max(6.0 * (3.0 - delta) / (6.0 - delta), 2.0 / mu); }

}  // namespace

FeasibleExponents evaluate_feasibility(double mu, double delta, double q) {
  FeasibleExponents f{mu, delta, q};
  f.lower_ok = q > lower_limit(mu, delta);
  f.upper_ok = q < 3.0;
  f.negativity_ok = 2.0 - 0.5 * delta - (6.0 - 2.0 * delta) / q < 0.0;
  return f;
}

FeasibleExponents explicit_construction(double mu) {
  if (!(mu > 2.0 / 3.0) || !std::isfinite(mu))
    throw DomainError("infeasible: the construction needs mu > 2/3 (got " + std::to_string(mu) + ")");
  const double delta_max = std::min(1.0, (6.0 * mu - 4.0) / (2.0 * mu - 1.0));
  const double delta = 0.5 * delta_max;
  const double q = 0.5 * (lower_limit(mu, delta) + 4.0 * (3.0 - delta) / (4.0 - delta));
  return evaluate_feasibility(mu, delta, q);
}

double FeasibleRegion::area() const {
  if (cells.empty()) return 0.0;
  return static_cast<double>(feasible_count) / static_cast<double>(cells.size());
}

bool FeasibleRegion::contains(double delta, double q) const {
  if (n_delta == 0 || n_q == 0 || !(delta > 0.0 && delta < 1.0) || !(q > 2.0 && q < 3.0)) return false;
  const auto i = std::min(n_delta - 1, static_cast<std::size_t>(delta * static_cast<double>(n_delta)));
  const auto j = std::min(n_q - 1, static_cast<std::size_t>((q - 2.0) * static_cast<double>(n_q)));
  if (cells[i * n_q + j].feasible()) return true;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t jj = 0; jj < n_q; ++jj) {
    const FeasibleExponents& c = cells[i * n_q + jj];
    if (!c.feasible()) continue;
    lo = std::min(lo, c.q);
    hi = std::max(hi, c.q);
  }
  return q >= lo && q <= hi;
}

FeasibleRegion feasibility_bruteforce(double mu, std::size_t n_delta, std::size_t n_q) {
  if (n_delta == 0 || n_q == 0) throw DomainError("feasibility grid must be non-empty");
  FeasibleRegion reg;
  reg.mu = mu;
  reg.n_delta = n_delta;
  reg.n_q = n_q;
  reg.cells.reserve(n_delta * n_q);
  for (std::size_t i = 0; i < n_delta; ++i) {
    const double delta = (static_cast<double>(i) + 0.5) / static_cast<double>(n_delta);
    for (std::size_t j = 0; j < n_q; ++j) {
      const double q = 2.0 + (static_cast<double>(j) + 0.5) / static_cast<double>(n_q);
      reg.cells.push_back(evaluate_feasibility(mu, delta, q));
      if (reg.cells.back().feasible()) ++reg.feasible_count;
    }
  }
  return reg;
}

std::array<double, 2> rhs_rates(double delta, double q) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("rhs_rates: delta must lie in (0, 1]");
  if (!(q > 0.0)) throw DomainError("rhs_rates: q must be positive");
  return {1.0 - 4.0 / q, (2.0 - 0.5 * delta - (6.0 - 2.0 * delta) / q) * 2.0 / (2.0 - delta)};
}

// ------------------------------------------------------------ decay table

std::string to_string(BetaCase c) {
  switch (c) {
    case BetaCase::gt2: return "gt2";
    case BetaCase::between: return "between";
    case BetaCase::eq2: return "eq2";
  }
  return "unknown";
}

DecayPrediction predicted_decay(double beta) {
  if (!(beta > 1.0) || !std::isfinite(beta)) throw DomainError("predicted_decay: beta must exceed 1");
  if (std::abs(beta - 2.0) <= kBetaTwoTolerance) return {beta, -1.0, true, BetaCase::eq2};
  if (beta > 2.0) return {beta, -1.5 + 1.0 / (2.0 * (beta - 1.0)), false, BetaCase::gt2};
  return {beta, 1.0 - beta, false, BetaCase::between};
}

TermExponents term_exponents(double beta, double alpha, double gamma, double delta) {
  if (!(beta > 1.0)) throw DomainError("term_exponents: beta must exceed 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("term_exponents: alpha must lie in [0, 1)");
  if (!(gamma >= 0.0 && gamma <= 1.0) || !(delta >= 0.0 && delta <= 1.0))
    throw DomainError("term_exponents: gamma and delta must lie in [0, 1]");
  const bool two = std::abs(beta - 2.0) <= kBetaTwoTolerance;
  TermExponents t;
  t.exponent[0] = -1.5 + gamma;
  if (two) {
    t.exponent[1] = -1.0;
    t.has_log[1] = true;
  } else {
    t.exponent[1] = beta > 2.0 ? -1.0 + gamma * (2.0 - beta) : 1.0 - beta;
  }
  const double mid = -alpha - delta + delta * alpha;
  t.exponent[2] = two ? mid : 2.0 - beta + mid;
  t.has_log[2] = two;
  t.exponent[3] = 1.0 - beta - alpha + delta * alpha;
  t.exponent[4] = t.exponent[2];
  t.has_log[4] = t.has_log[2];
  t.exponent[5] = 1.0 - beta;
  t.max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 6; ++i) {
    if (t.exponent[i] > t.max + 1e-15) {
      t.max = t.exponent[i];
      t.max_has_log = t.has_log[i];
    } else if (std::abs(t.exponent[i] - t.max) <= 1e-15) {
      t.max_has_log = t.max_has_log || t.has_log[i];
    }
  }
  return t;
}

SplitOptimum optimize_split(double beta, const SplitGrid& grid) {
  if (!(beta > 1.0)) throw DomainError("optimize_split: beta must exceed 1");
  if (grid.n_gamma < 2 || grid.n_delta < 2 || grid.n_alpha < 1) throw DomainError("optimize_split: grid too small");
  SplitOptimum best;
  best.exponent = std::numeric_limits<double>::infinity();
  best.gamma_step = 1.0 / static_cast<double>(grid.n_gamma - 1);
  const double tie = 1e-12;
  for (std::size_t ig = 0; ig < grid.n_gamma; ++ig) {
    const double gamma = static_cast<double>(ig) / static_cast<double>(grid.n_gamma - 1);
    for (std::size_t id = grid.n_delta; id-- > 0;) {
      const double delta = static_cast<double>(id) / static_cast<double>(grid.n_delta - 1);
      for (std::size_t ia = 0; ia < grid.n_alpha; ++ia) {
        const double alpha = static_cast<double>(ia) / static_cast<double>(grid.n_alpha);
        const TermExponents t = term_exponents(beta, alpha, gamma, delta);
        // A logarithm makes an equal exponent strictly worse.
        const bool better = t.max < best.exponent - tie ||
                            (std::abs(t.max - best.exponent) <= tie && !t.max_has_log && best.has_log);
        if (better) best = {alpha, gamma, delta, t.max, t.max_has_log, best.gamma_step};
      }
    }
  }
  return best;
}

// -------------------------------------------------------------------- fits

FitResult fit_decay(std::span<const DecaySample> samples, const FitOptions& opt) {
  FitResult fit;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].r > samples[i - 1].r)) throw DomainError("fit_decay: radii must be strictly increasing");
  if (!samples.empty() && !(samples.front().r > 1.0)) throw DomainError("fit_decay: radii must exceed 1");

  std::vector<DecaySample> kept;
  for (const DecaySample& s : samples) {
    if (s.value > 0.0 && std::isfinite(s.value)) {
      kept.push_back(s);
    } else {
      fit.warnings.push_back("dropped sample at r = " + std::to_string(s.r) + " (value " + std::to_string(s.value) +
                             " not positive)");
    }
  }
  if (kept.size() < 5)
    throw DomainError("fit_decay: " + std::to_string(kept.size()) + " positive samples, need at least 5");
  fit.used = kept.size();

  const auto n = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n), sw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const DecaySample& s = kept[static_cast<std::size_t>(i)];
    const double lr = std::log(s.r);
    const double sigma = std::max(std::abs(s.error) / s.value, opt.relative_noise_floor);
    sw(i) = 1.0 / sigma;
    X(i, 0) = 1.0;
    X(i, 1) = lr;
    X(i, 2) = std::log(lr);
    y(i) = std::log(s.value);
  }
  const Eigen::MatrixXd Xw = sw.asDiagonal() * X;
  const Eigen::VectorXd yw = sw.asDiagonal() * y;
  const double wsum = sw.array().square().sum();

  const Eigen::VectorXd bp = Xw.leftCols(2).colPivHouseholderQr().solve(yw);
  const double rss_p = (Xw.leftCols(2) * bp - yw).squaredNorm();
  const Eigen::VectorXd bl = Xw.colPivHouseholderQr().solve(yw);
  const double rss_l = (Xw * bl - yw).squaredNorm();

  fit.intercept = bp(0);
  fit.slope = bp(1);
  fit.residual = std::sqrt(rss_p / wsum);
  fit.with_log_correction.intercept = bl(0);
  fit.with_log_correction.slope = bl(1);
  fit.with_log_correction.log_coeff = bl(2);
  fit.with_log_correction.residual = std::sqrt(rss_l / wsum);

  const double dof = static_cast<double>(n) - 3.0;
  if (dof > 0.0) {
    const double drop = std::max(rss_p - rss_l, 0.0);
    fit.f_statistic = rss_l > 0.0 ? drop / (rss_l / dof) : std::numeric_limits<double>::infinity();
  }
  fit.log_model_selected = fit.residual > opt.residual_floor && fit.f_statistic > opt.f_critical;
  return fit;
}

}  // namespace axiskit

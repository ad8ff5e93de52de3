#pragma once

// Exponent arithmetic for the vanishing criteria: the (delta, q)
// feasibility conditions, the Caccioppoli right-hand-side rates, the decay
// exponents predicted for velocity reconstructed from power-law vorticity,
// the six-term bookkeeping behind them, and empirical decay fits.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace axiskit {

// ------------------------------------------------------------- feasibility

struct FeasibleExponents {
  double mu = 0.0;
  double delta = 0.0;
  double q = 0.0;
  bool lower_ok = false;       // q > max{6(3-delta)/(6-delta), 2/mu}
  bool upper_ok = false;       // q < 3
  bool negativity_ok = false;  // 2 - delta/2 - (6 - 2 delta)/q < 0

  bool feasible() const { return lower_ok && upper_ok && negativity_ok; }
};

/// Evaluates the three predicates at (delta, q) for the given mu.
FeasibleExponents evaluate_feasibility(double mu, double delta, double q);

/// delta0 = midpoint of (0, min{1, (6mu - 4)/(2mu - 1)}),
/// q = (max{6(3-delta0)/(6-delta0), 2/mu} + 4(3-delta0)/(4-delta0)) / 2.
/// Throws DomainError ("infeasible") for mu <= 2/3.
FeasibleExponents explicit_construction(double mu);

/// Exhaustive predicate evaluation at the cell centres
/// delta_i = (i + 1/2)/n_delta, q_j = 2 + (j + 1/2)/n_q.
struct FeasibleRegion {
  double mu = 0.0;
  std::size_t n_delta = 0, n_q = 0;
  std::vector<FeasibleExponents> cells;  // row-major (delta, then q)
  std::size_t feasible_count = 0;

  bool empty() const { return feasible_count == 0; }
  double area() const;  // feasible fraction of (0,1) x (2,3)
  /// True when (delta, q) lies in the region: its cell is feasible, or it lies
  /// between feasible cell centres of its delta column (the region is thin
  /// near mu = 2/3, thinner than one cell).
  bool contains(double delta, double q) const;
};

FeasibleRegion feasibility_bruteforce(double mu, std::size_t n_delta, std::size_t n_q);

/// (1 - 4/q, (2 - delta/2 - (6 - 2 delta)/q) * 2/(2 - delta)).
std::array<double, 2> rhs_rates(double delta, double q);

// ------------------------------------------------------------ decay table

enum class BetaCase { gt2, between, eq2 };

struct DecayPrediction {
  double beta = 0.0;
  double exponent = 0.0;
  bool has_log = false;
  BetaCase beta_case = BetaCase::gt2;
};

std::string to_string(BetaCase c);

/// Tolerance within which beta is treated as exactly 2.
inline constexpr double kBetaTwoTolerance = 1e-12;

/// beta > 2: -3/2 + 1/(2(beta - 1)); 1 < beta < 2: 1 - beta; beta = 2: -1
/// with a logarithm. Throws DomainError for beta <= 1.
DecayPrediction predicted_decay(double beta);

/// Exponents of the six terms I1..I6 (I5 duplicates I3) and their maximum.
struct TermExponents {
  std::array<double, 6> exponent{};
  std::array<bool, 6> has_log{};
  double max = 0.0;
  bool max_has_log = false;
};

/// Requires 0 <= alpha < 1, 0 <= gamma, delta <= 1, beta > 1.
TermExponents term_exponents(double beta, double alpha, double gamma, double delta);

/// Search grid: gamma on n_gamma points of [0, 1], delta on n_delta points of
/// [0, 1], alpha on n_alpha points of [0, 1 - 1/n_alpha] (alpha < 1).
struct SplitGrid {
  std::size_t n_gamma = 401;
  std::size_t n_alpha = 41;
  std::size_t n_delta = 41;
};

struct SplitOptimum {
  double alpha = 0.0, gamma = 0.0, delta = 0.0;
  double exponent = 0.0;
  bool has_log = false;
  double gamma_step = 0.0;
};

/// Grid minimiser of the maximal term exponent. Ties (within 1e-12) go to
/// smaller gamma, then larger delta, then smaller alpha.
SplitOptimum optimize_split(double beta, const SplitGrid& grid = {});

// -------------------------------------------------------------------- fits

struct DecaySample {
  double r = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct FitResult {
  // log|v| = intercept + slope log r
  double slope = 0.0, intercept = 0.0, residual = 0.0;
  // log|v| = intercept + slope log r + log_coeff log log r
  struct {
    double slope = 0.0, intercept = 0.0, log_coeff = 0.0, residual = 0.0;
  } with_log_correction;
  bool log_model_selected = false;
  double f_statistic = 0.0;
  std::size_t used = 0;
  std::vector<std::string> warnings;

  double selected_slope() const { return log_model_selected ? with_log_correction.slope : slope; }
};

struct FitOptions {
  double relative_noise_floor = 1e-2;  // weights use max(error/|value|, floor)
  double residual_floor = 1e-6;        // power residual below this: exact power law
  double f_critical = 20.0;            // log model needs F above this
};

/// Weighted least squares in log-log space. Requires >= 5 positive samples,
/// r strictly increasing and r_min > 1 (DomainError otherwise).
FitResult fit_decay(std::span<const DecaySample> samples, const FitOptions& opt = {});

}  // namespace axiskit

#include "axiskit/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "axiskit/biot_savart.hpp"
#include "axiskit/error.hpp"
#include "axiskit/kernel_bounds.hpp"
#include "axiskit/norms.hpp"
#include "axiskit/parallel.hpp"
#include "axiskit/rate_calculus.hpp"
#include "axiskit/report.hpp"

namespace axiskit {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"kernel-scan", "decay", "feasibility", "roundtrip", "bmo",
                                                 "print-config"};
  return names;
}

namespace {

void say(const CommandContext& ctx, const std::string& msg) {
  if (ctx.log) *ctx.log << msg << '\n';
}

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::filesystem::path prepare_out(const CommandContext& ctx) {
  std::filesystem::create_directories(ctx.out_dir);
  return ctx.out_dir;
}

Json grid_point_json(const GridPoint& g) { return Json{{"r", g.r}, {"rho", g.rho}, {"zeta", g.zeta}}; }

}  // namespace

// ------------------------------------------------------------ kernel-scan

int cmd_kernel_scan(const CommandContext& ctx) {
  const ScanSettings s = scan_settings(ctx.config);
  const auto dir = prepare_out(ctx);
  Json summary;
  summary["seed"] = ctx.config.get_int("seed");
  summary["refined"] = s.options.refine;
  summary["base_grid_points"] = s.grid.size();
  if (s.options.refine) summary["refined_grid_points"] = s.grid.refined().size();
  Json scans = Json::array();
  bool all_stable = true, any_failure = false, any_violation = false;
  std::size_t cells_total = 0, cells_stable = 0;

  for (EnvelopeKind kind : s.kinds) {
    const std::vector<double>& alphas = kind == EnvelopeKind::gamma23 ? s.alphas_gamma23 : s.alphas_gamma1;
    for (double alpha : alphas) {
      say(ctx, "kernel-scan: " + to_string(kind) + " alpha = " + short_number(alpha));
      const ScanReport rep = bound_scan(kind, alpha, s.grid, s.options);
      const std::string stem = "scan_" + to_string(kind) + "_alpha" + short_number(alpha);
      CsvWriter csv(dir / (stem + ".csv"), {"r", "rho", "zeta", "K", "regime", "kernel", "envelope", "ratio"});
      for (const ScanPoint& p : rep.points)
        csv.row({p.r, p.rho, p.zeta, p.K, to_string(p.regime), p.kernel, p.envelope, p.ratio});

      Json j;
      j["kind"] = to_string(kind);
      j["alpha"] = alpha;
      j["csv"] = stem + ".csv";
      j["points"] = rep.points.size();
      j["excluded_diagonal"] = rep.excluded_diagonal;
      j["excluded_regime"] = rep.excluded_regime;
      j["small_k_violations"] = rep.small_k_violations;
      j["crude_violations"] = rep.crude_violations;
      j["sup"] = json_number(rep.sup);
      Json cells = Json::array();
      for (const CellSummary& c : rep.cells) {
        if (c.count == 0) continue;
        Json cj{{"regime", to_string(c.regime)},
                {"K", c.small_k ? "<=1" : ">1"},
                {"count", c.count},
                {"sup", json_number(c.sup)},
                {"at", grid_point_json(c.at)}};
        if (rep.refined) {
          cj["refined_count"] = c.refined_count;
          cj["refined_sup"] = json_number(c.refined_sup);
          cj["change"] = json_number(c.change);
          cj["stable"] = c.stable;
          ++cells_total;
          cells_stable += c.stable ? 1 : 0;
        }
        cells.push_back(cj);
      }
      j["cells"] = cells;
      if (rep.refined) j["stable"] = rep.stable;
      Json failures = Json::array();
      for (const ScanFailure& f : rep.failures)
        failures.push_back(Json{{"at", grid_point_json(f.point)}, {"message", f.message}});
      j["failures"] = failures;
      scans.push_back(j);

      all_stable = all_stable && (!rep.refined || rep.stable);
      any_failure = any_failure || !rep.failures.empty() || !std::isfinite(rep.sup);
      any_violation = any_violation || rep.small_k_violations > 0 || rep.crude_violations > 0;
    }
  }
  summary["scans"] = scans;
  if (s.options.refine) {
    summary["stable_cells"] = cells_stable;
    summary["stable_cell_percentage"] = cells_total ? 100.0 * static_cast<double>(cells_stable) / static_cast<double>(cells_total) : 100.0;
  }
  summary["all_stable"] = s.options.refine ? Json(all_stable) : Json("not assessed");
  const int code = any_failure ? kExitNumericalFailure : (any_violation || !all_stable || !s.options.refine) ? kExitViolation : kExitOk;
  summary["exit_code"] = code;
  write_json(dir / "kernel_scan.json", summary);
  return code;
}

// ------------------------------------------------------------------ decay

int cmd_decay(const CommandContext& ctx) {
  const DecaySettings s = decay_settings(ctx.config);
  const auto dir = prepare_out(ctx);
  const VorticityField w = power_law_vorticity(s.beta, s.source, s.envelope);
  const DecayPrediction pred = predicted_decay(s.beta);
  say(ctx, "decay: beta = " + short_number(s.beta) + ", " + std::to_string(s.ladder.size()) + " radii");
  const std::vector<TraceSample> trace = decay_trace(w, s.component, s.ladder, s.trace);

  CsvWriter csv(dir / "decay_trace.csv",
                {"r", "value", "quad_err", "tail_bound", "I1", "I2", "I3", "I4", "I5", "I6", "flagged"});
  std::vector<DecaySample> samples;
  std::size_t flagged = 0;
  for (const TraceSample& t : trace) {
    csv.row({t.r, t.value, t.quad_err, t.tail_bound, t.per_region[0], t.per_region[1], t.per_region[2],
             t.per_region[3], t.per_region[4], t.per_region[5], t.flagged});
    samples.push_back({t.r, t.value, t.quad_err + t.tail_bound});
    flagged += t.flagged ? 1 : 0;
  }

  Json j;
  j["seed"] = ctx.config.get_int("seed");
  j["beta"] = s.beta;
  j["component"] = to_string(s.component);
  j["envelope"] = s.envelope.describe();
  j["predicted"] = {{"exponent", pred.exponent}, {"has_log", pred.has_log}, {"case", to_string(pred.beta_case)}};
  if (s.trace.split_from_beta) {
    const SplitOptimum split = optimize_split(s.beta);
    j["split"] = {{"gamma", split.gamma}, {"delta", split.delta}, {"alpha", split.alpha}, {"exponent", split.exponent},
                  {"has_log", split.has_log}};
  } else {
    j["split"] = {{"gamma", s.trace.spec.gamma}, {"delta", s.trace.spec.delta}};
  }
  j["flagged_samples"] = flagged;

  int code = flagged > 0 ? kExitNumericalFailure : kExitOk;
  try {
    const FitResult fit = fit_decay(samples);
    j["fit"] = {{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"residual", fit.residual},
                {"log_model", {{"slope", fit.with_log_correction.slope},
                               {"intercept", fit.with_log_correction.intercept},
                               {"log_coeff", fit.with_log_correction.log_coeff},
                               {"residual", fit.with_log_correction.residual}}},
                {"log_model_selected", fit.log_model_selected},
                {"f_statistic", json_number(fit.f_statistic)},
                {"selected_slope", fit.selected_slope()},
                {"used", fit.used},
                {"warnings", fit.warnings}};
    const bool holds = fit.selected_slope() <= pred.exponent + s.slope_tolerance;
    j["slope_within_prediction"] = holds;
    if (code == kExitOk && !holds) code = kExitViolation;
  } catch (const DomainError& e) {
    j["fit_error"] = e.what();
    code = kExitNumericalFailure;
  }
  j["exit_code"] = code;
  write_json(dir / "decay.json", j);
  return code;
}

// ------------------------------------------------------------ feasibility

namespace {

// Region and construction for one mu, plus whether they agree: for mu > 2/3
// the construction is feasible and inside a non-empty region, otherwise the
// region is empty and the construction reports infeasibility.
Json check_mu(double mu, const FeasibleRegion& region, bool& agrees) {
  Json j;
  j["mu"] = mu;
  j["region"] = {{"feasible_cells", region.feasible_count},
                 {"cells", region.cells.size()},
                 {"area", region.area()},
                 {"empty", region.empty()}};
  bool ok = false;
  try {
    const FeasibleExponents c = explicit_construction(mu);
    const bool inside = region.contains(c.delta, c.q);
    j["construction"] = {{"delta", c.delta},          {"q", c.q},
                         {"lower_ok", c.lower_ok},    {"upper_ok", c.upper_ok},
                         {"negativity_ok", c.negativity_ok}, {"feasible", c.feasible()},
                         {"inside_region", inside}};
    const auto rates = rhs_rates(c.delta, c.q);
    j["construction"]["rhs_rates"] = {rates[0], rates[1]};
    j["verdict"] = "feasible";
    ok = c.feasible() && inside && !region.empty();
  } catch (const DomainError& e) {
    j["construction"] = {{"error", e.what()}};
    j["verdict"] = "infeasible";
    ok = region.empty();
  }
  j["agrees"] = ok;
  agrees = ok;
  return j;
}

}  // namespace

int cmd_feasibility(const CommandContext& ctx) {
  const FeasibilitySettings s = feasibility_settings(ctx.config);
  const auto dir = prepare_out(ctx);
  say(ctx, "feasibility: mu = " + short_number(s.mu));
  const FeasibleRegion region = feasibility_bruteforce(s.mu, s.n_delta, s.n_q);
  {
    CsvWriter csv(dir / "feasibility_region.csv", {"delta", "q", "lower_ok", "upper_ok", "negativity_ok", "feasible"});
    for (const FeasibleExponents& c : region.cells)
      csv.row({c.delta, c.q, c.lower_ok, c.upper_ok, c.negativity_ok, c.feasible()});
  }
  bool agrees = true;
  Json j{{"seed", ctx.config.get_int("seed")}, {"grid", {{"n_delta", s.n_delta}, {"n_q", s.n_q}}}};
  j.update(check_mu(s.mu, region, agrees));

  if (!s.mu_sweep.empty()) {
    CsvWriter csv(dir / "feasibility_boundary.csv", {"mu", "delta", "q_min", "q_max"});
    Json sweep = Json::array();
    for (double mu : s.mu_sweep) {
      const FeasibleRegion reg = feasibility_bruteforce(mu, s.n_delta, s.n_q);
      for (std::size_t i = 0; i < reg.n_delta; ++i) {
        double lo = INFINITY, hi = -INFINITY, delta = 0.0;
        for (std::size_t k = 0; k < reg.n_q; ++k) {
          const FeasibleExponents& c = reg.cells[i * reg.n_q + k];
          delta = c.delta;
          if (!c.feasible()) continue;
          lo = std::min(lo, c.q);
          hi = std::max(hi, c.q);
        }
        if (lo <= hi) csv.row({mu, delta, lo, hi});
      }
      bool ok = true;
      sweep.push_back(check_mu(mu, reg, ok));
      agrees = agrees && ok;
    }
    j["sweep"] = sweep;
  }
  const int code = agrees ? kExitOk : kExitViolation;
  j["exit_code"] = code;
  write_json(dir / "feasibility.json", j);
  return code;
}

// -------------------------------------------------------------- roundtrip

namespace {

struct Probe {
  MeridianPoint p;
  double exact = 0.0;
  ReconstructionResult rec;
};

}  // namespace

int cmd_roundtrip(const CommandContext& ctx) {
  const RoundtripSettings s = roundtrip_settings(ctx.config);
  const auto dir = prepare_out(ctx);
  const unsigned workers = static_cast<unsigned>(std::max<long long>(1, ctx.config.get_int("workers")));
  const SupportBox support{s.center_r - s.radius, s.center_r + s.radius, s.center_z - s.radius, s.center_z + s.radius};
  std::vector<MeridianPoint> probes;
  for (double r : s.probe_r)
    for (double z : s.probe_z) probes.push_back({r, z});

  CsvWriter csv(dir / "roundtrip.csv", {"field", "component", "r", "z", "exact", "reconstructed", "abs_error",
                                        "quad_err", "tail_bound", "converged"});
  Json results = Json::array();
  bool numerical_ok = true, within = true;

  for (const std::string& name : s.fields) {
    AxisymField field;
    VorticityField w;
    std::vector<VelocityComponent> comps;
    if (name == "stream") {
      field = bump_stream_field(s.center_r, s.center_z, s.radius, s.amplitude);
      w = vorticity_of(field, support);
      comps = {VelocityComponent::ur, VelocityComponent::uz};
    } else if (name == "swirl") {
      field = bump_swirl_field(s.center_r, s.center_z, s.radius, s.amplitude);
      w = vorticity_of(field, support);
      comps = {VelocityComponent::utheta};
    } else {
      w.support = support;
      comps = {VelocityComponent::ur, VelocityComponent::uz, VelocityComponent::utheta};
    }
    for (VelocityComponent c : comps) {
      say(ctx, "roundtrip: " + name + " " + to_string(c));
      const Profile& exact = c == VelocityComponent::ur ? field.u_r : c == VelocityComponent::uz ? field.u_z : field.u_theta;
      const std::vector<Probe> out = parallel_map<Probe>(probes.size(), workers, [&](std::size_t i) {
        return Probe{probes[i], exact(probes[i]), reconstruct(c, w, probes[i], s.spec)};
      });
      double num = 0.0, den = 0.0, max_abs = 0.0;
      bool converged = true;
      for (const Probe& pr : out) {
        const double e = pr.rec.value - pr.exact;
        num += e * e;
        den += pr.exact * pr.exact;
        max_abs = std::max(max_abs, std::abs(e));
        converged = converged && pr.rec.converged;
        csv.row({name, to_string(c), pr.p.r, pr.p.z, pr.exact, pr.rec.value, std::abs(e), pr.rec.quad_err,
                 pr.rec.tail_bound, pr.rec.converged});
      }
      Json j{{"field", name}, {"component", to_string(c)}, {"probes", out.size()}, {"max_abs_error", max_abs},
             {"converged", converged}};
      bool pass;
      if (den > 0.0) {
        const double rel = std::sqrt(num / den);
        j["relative_l2_error"] = rel;
        pass = rel < s.threshold;
      } else {
        j["relative_l2_error"] = nullptr;
        pass = max_abs == 0.0;
      }
      j["pass"] = pass;
      results.push_back(j);
      numerical_ok = numerical_ok && converged;
      within = within && pass;
    }
  }
  const int code = !numerical_ok ? kExitNumericalFailure : within ? kExitOk : kExitViolation;
  write_json(dir / "roundtrip.json",
             Json{{"seed", ctx.config.get_int("seed")}, {"threshold", s.threshold}, {"results", results}, {"exit_code", code}});
  return code;
}

// -------------------------------------------------------------------- bmo

int cmd_bmo(const CommandContext& ctx) {
  const BmoSettings s = bmo_settings(ctx.config);
  const auto dir = prepare_out(ctx);
  CsvWriter csv(dir / "bmo.csv", {"k", "R", "display", "value", "mean", "mean_exact"});
  Json displays = Json::array();
  bool ok = true;
  double worst_mean = 0.0;
  for (BmoDisplay d : {BmoDisplay::cubic, BmoDisplay::two_thirds, BmoDisplay::twelfth}) {
    double lo = INFINITY, hi = 0.0;
    for (int k = s.k_min; k <= s.k_max; ++k) {
      const double R = std::ldexp(1.0, k);
      const BmoResult b = bmo_oscillation_ln(R, d);
      csv.row({static_cast<long long>(k), R, to_string(d), b.value, b.mean, b.mean_exact});
      lo = std::min(lo, b.value);
      hi = std::max(hi, b.value);
      worst_mean = std::max(worst_mean, std::abs(b.mean - b.mean_exact));
    }
    const double ratio = hi / lo;
    const bool pass = ratio < s.ratio_threshold;
    ok = ok && pass;
    displays.push_back(Json{{"display", to_string(d)}, {"min", lo}, {"max", hi}, {"ratio", ratio}, {"pass", pass}});
  }
  const bool mean_ok = worst_mean <= 1e-8;
  const int code = ok && mean_ok ? kExitOk : kExitViolation;
  write_json(dir / "bmo.json", Json{{"seed", ctx.config.get_int("seed")},
                                    {"scales", {s.k_min, s.k_max}},
                                    {"displays", displays},
                                    {"max_mean_error", worst_mean},
                                    {"mean_ok", mean_ok},
                                    {"exit_code", code}});
  return code;
}

// ----------------------------------------------------------- print-config

int cmd_print_config(const CommandContext& ctx, std::ostream& os) {
  ctx.config.dump(os);
  return kExitOk;
}

int run_command(const std::string& name, const CommandContext& ctx, std::ostream& out, std::ostream& err) {
  try {
    if (name == "kernel-scan") return cmd_kernel_scan(ctx);
    if (name == "decay") return cmd_decay(ctx);
    if (name == "feasibility") return cmd_feasibility(ctx);
    if (name == "roundtrip") return cmd_roundtrip(ctx);
    if (name == "bmo") return cmd_bmo(ctx);
    if (name == "print-config") return cmd_print_config(ctx, out);
    err << "unknown subcommand '" << name << "'\n";
    return kExitInvalidConfig;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "output error: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
}

}  // namespace axiskit

#include "axiskit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "axiskit/error.hpp"

namespace axiskit {

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"seed", "1", "recorded in every summary; no subcommand draws random numbers"},
      {"workers", "1", "worker threads for grid and ladder evaluation"},
      {"refine", "true", "kernel-scan: rerun on the 2x refined grid"},

      {"scan.kinds", "gamma23,gamma1", "envelopes to scan: gamma23, gamma1"},
      {"scan.alphas_gamma23", "0,0.5,1", "alpha values for the gamma23 envelope (each in [0, 1])"},
      {"scan.alphas_gamma1", "0,0.5,1,2,3", "alpha values for the gamma1 envelope (each in [0, 3])"},
      {"scan.r_min", "2", "smallest r (> 1)"},
      {"scan.r_max", "1000", "largest r"},
      {"scan.n_r", "8", "log-spaced r values"},
      {"scan.ratio_min", "0.01", "smallest rho/r"},
      {"scan.ratio_max", "100", "largest rho/r"},
      {"scan.n_ratio", "41", "log-spaced rho/r values (regime thresholds are added)"},
      {"scan.zeta_ratio_min", "0.001", "smallest |zeta|/r"},
      {"scan.zeta_ratio_max", "10", "largest |zeta|/r"},
      {"scan.n_zeta", "21", "log-spaced |zeta|/r values per sign"},
      {"scan.diagonal_margin", "0.001", "exclude points with dist < margin * max(r, rho)"},
      {"scan.kernel_rel_tol", "1e-10", "relative tolerance of each kernel evaluation"},
      {"scan.stability_threshold", "0.05", "largest accepted relative change of a cell supremum"},

      {"profile.beta", "3", "vorticity decay exponent (> 1)"},
      {"profile.component", "theta", "vorticity components carrying the profile: theta, r_and_z"},
      {"profile.envelope", "gaussian", "axial envelope: gaussian, compact"},
      {"profile.width", "1", "axial envelope width"},
      {"decay.component", "b", "velocity component: ur, uz, utheta, b (= |u_r| + |u_z|)"},
      {"decay.r_min", "10", "first ladder radius (> 1)"},
      {"decay.r_max", "1280", "last ladder radius; the ladder doubles from r_min"},
      {"decay.z", "0", "probe height"},
      {"decay.tol_factor", "1e-4", "absolute tolerance = factor * r^(predicted exponent)"},
      {"decay.max_relative_error", "0.1", "flag samples whose error exceeds this fraction"},
      {"decay.slope_tolerance", "0.1", "exit 0 iff fitted slope <= predicted + tolerance"},
      {"decay.split_from_beta", "true", "take (gamma, delta) from the split optimiser"},

      {"quad.gamma", "0", "inner split exponent when not derived from beta"},
      {"quad.delta", "1", "strip half-width exponent when not derived from beta"},
      {"quad.rho_max", "0", "radial truncation (0: 64 max(1, r))"},
      {"quad.z_max", "0", "axial truncation about z (0: 64 max(1, r))"},
      {"quad.tol_abs", "1e-10", "absolute tolerance per reconstruction"},
      {"quad.tol_rel", "1e-9", "relative tolerance per reconstruction"},
      {"quad.near_diag_refinement", "24", "geometric levels toward the singular point"},
      {"quad.polar_radius", "0.5", "cap on the polar patch half-width"},
      {"quad.max_panels", "2000", "panel budget per one-dimensional integral"},

      {"feasibility.mu", "1", "velocity decay exponent mu"},
      {"feasibility.n_delta", "200", "brute-force grid cells in delta"},
      {"feasibility.n_q", "200", "brute-force grid cells in q"},
      {"feasibility.mu_sweep", "", "optional mu values for the boundary CSV"},

      {"roundtrip.fields", "stream,swirl,zero", "fields to round-trip: stream, swirl, zero"},
      {"roundtrip.center_r", "3", "bump centre r"},
      {"roundtrip.center_z", "0", "bump centre z"},
      {"roundtrip.radius", "1", "bump radius"},
      {"roundtrip.amplitude", "1", "bump amplitude"},
      {"roundtrip.probe_r", "1.5,2.25,3,3.75,4.5", "probe radii (> 1)"},
      {"roundtrip.probe_z", "-0.8,-0.25,0.3,0.9", "probe heights"},
      {"roundtrip.threshold", "1e-3", "largest accepted relative L2 error"},

      {"bmo.k_min", "1", "first scale R = 2^k_min"},
      {"bmo.k_max", "20", "last scale R = 2^k_max"},
      {"bmo.ratio_threshold", "1.01", "largest accepted max/min ratio across scales"},
  };
  return keys;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end || !std::isfinite(x))
    throw ConfigError("config key '" + key + "': '" + v + "' is not a finite number");
  return x;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw ConfigError("config key '" + key + "': " + why);
}

void require(bool ok, const std::string& key, const std::string& why) {
  if (!ok) bad(key, why);
}

QuadratureSpec quadrature_spec(const RunConfig& c) {
  QuadratureSpec s;
  s.gamma = c.get_double("quad.gamma");
  s.delta = c.get_double("quad.delta");
  require(s.gamma >= 0.0 && s.gamma <= 1.0, "quad.gamma", "must lie in [0, 1]");
  require(s.delta >= 0.0 && s.delta <= 1.0, "quad.delta", "must lie in [0, 1]");
  s.rho_max = c.get_double("quad.rho_max");
  s.z_max = c.get_double("quad.z_max");
  require(s.rho_max >= 0.0, "quad.rho_max", "must be >= 0");
  require(s.z_max >= 0.0, "quad.z_max", "must be >= 0");
  s.tol.abs = c.get_double("quad.tol_abs");
  s.tol.rel = c.get_double("quad.tol_rel");
  require(s.tol.abs > 0.0, "quad.tol_abs", "must be > 0");
  require(s.tol.rel >= 0.0, "quad.tol_rel", "must be >= 0");
  const long long depth = c.get_int("quad.near_diag_refinement");
  require(depth >= 1 && depth <= 60, "quad.near_diag_refinement", "must lie in [1, 60]");
  s.near_diag_refinement = static_cast<std::size_t>(depth);
  s.polar_radius = c.get_double("quad.polar_radius");
  require(s.polar_radius > 0.0, "quad.polar_radius", "must be > 0");
  const long long panels = c.get_int("quad.max_panels");
  require(panels >= 16, "quad.max_panels", "must be >= 16");
  s.max_panels = static_cast<std::size_t>(panels);
  return s;
}

std::size_t positive_count(const RunConfig& c, const std::string& key) {
  const long long n = c.get_int(key);
  require(n >= 1, key, "must be >= 1");
  return static_cast<std::size_t>(n);
}

}  // namespace

RunConfig::RunConfig() {
  for (const ConfigKey& k : config_keys()) values_[k.key] = k.default_value;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path);
}

RunConfig RunConfig::from_string(const std::string& text, const std::string& origin) {
  RunConfig c;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    try {
      c.set(key, trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "' (see print-config for the full list)");
  it->second = value;
}

const std::string& RunConfig::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

double RunConfig::get_double(const std::string& key) const { return parse_double(key, raw(key)); }

long long RunConfig::get_int(const std::string& key) const {
  const std::string& v = raw(key);
  long long x = 0;
  const char* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) bad(key, "'" + v + "' is not an integer");
  return x;
}

bool RunConfig::get_bool(const std::string& key) const {
  const std::string& v = raw(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, "'" + v + "' is not a boolean (true/false)");
}

std::vector<double> RunConfig::get_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : split_list(raw(key))) out.push_back(parse_double(key, item));
  return out;
}

void RunConfig::dump(std::ostream& os) const {
  for (const ConfigKey& k : config_keys()) {
    os << "# " << k.help << "\n";
    os << k.key << " = " << values_.at(k.key) << "\n";
  }
}

// ---------------------------------------------------------------- settings

ScanSettings scan_settings(const RunConfig& c) {
  ScanSettings s;
  for (const std::string& k : split_list(c.raw("scan.kinds"))) {
    if (k == "gamma23") s.kinds.push_back(EnvelopeKind::gamma23);
    else if (k == "gamma1") s.kinds.push_back(EnvelopeKind::gamma1);
    else bad("scan.kinds", "unknown envelope '" + k + "' (gamma23, gamma1)");
  }
  require(!s.kinds.empty(), "scan.kinds", "must name at least one envelope");
  s.alphas_gamma23 = c.get_list("scan.alphas_gamma23");
  s.alphas_gamma1 = c.get_list("scan.alphas_gamma1");
  for (double a : s.alphas_gamma23)
    require(a >= 0.0 && a <= alpha_limit(EnvelopeKind::gamma23, RadialRegime::inner), "scan.alphas_gamma23",
            "alpha " + std::to_string(a) + " outside [0, 1]");
  for (double a : s.alphas_gamma1)
    require(a >= 0.0 && a <= alpha_limit(EnvelopeKind::gamma1, RadialRegime::inner), "scan.alphas_gamma1",
            "alpha " + std::to_string(a) + " outside [0, 3]");

  ScanGridSpec& g = s.grid;
  g.r_min = c.get_double("scan.r_min");
  g.r_max = c.get_double("scan.r_max");
  require(g.r_min > 1.0, "scan.r_min", "must exceed 1");
  require(g.r_max >= g.r_min, "scan.r_max", "must be >= scan.r_min");
  g.n_r = positive_count(c, "scan.n_r");
  g.ratio_min = c.get_double("scan.ratio_min");
  g.ratio_max = c.get_double("scan.ratio_max");
  require(g.ratio_min > 0.0 && g.ratio_max >= g.ratio_min, "scan.ratio_min", "need 0 < ratio_min <= ratio_max");
  g.n_ratio = positive_count(c, "scan.n_ratio");
  g.zeta_ratio_min = c.get_double("scan.zeta_ratio_min");
  g.zeta_ratio_max = c.get_double("scan.zeta_ratio_max");
  require(g.zeta_ratio_min > 0.0 && g.zeta_ratio_max >= g.zeta_ratio_min, "scan.zeta_ratio_min",
          "need 0 < zeta_ratio_min <= zeta_ratio_max");
  g.n_zeta = positive_count(c, "scan.n_zeta");

  ScanOptions& o = s.options;
  o.diagonal_margin = c.get_double("scan.diagonal_margin");
  require(o.diagonal_margin >= 0.0, "scan.diagonal_margin", "must be >= 0");
  o.tol.rel = c.get_double("scan.kernel_rel_tol");
  require(o.tol.rel > 0.0, "scan.kernel_rel_tol", "must be > 0");
  o.stability_threshold = c.get_double("scan.stability_threshold");
  require(o.stability_threshold > 0.0, "scan.stability_threshold", "must be > 0");
  o.refine = c.get_bool("refine");
  o.workers = static_cast<unsigned>(positive_count(c, "workers"));
  return s;
}

DecaySettings decay_settings(const RunConfig& c) {
  DecaySettings s;
  s.beta = c.get_double("profile.beta");
  require(s.beta > 1.0, "profile.beta", "must exceed 1 (got " + c.raw("profile.beta") + ")");
  const std::string& src = c.raw("profile.component");
  if (src == "theta") s.source = VorticityComponent::theta;
  else if (src == "r_and_z") s.source = VorticityComponent::r_and_z;
  else bad("profile.component", "unknown value '" + src + "' (theta, r_and_z)");
  const std::string& env = c.raw("profile.envelope");
  if (env == "gaussian") s.envelope.kind = AxialEnvelope::Kind::gaussian;
  else if (env == "compact") s.envelope.kind = AxialEnvelope::Kind::compact;
  else bad("profile.envelope", "unknown value '" + env + "' (gaussian, compact)");
  s.envelope.width = c.get_double("profile.width");
  require(s.envelope.width > 0.0, "profile.width", "must be > 0");

  const std::string& comp = c.raw("decay.component");
  if (comp == "ur") s.component = VelocityComponent::ur;
  else if (comp == "uz") s.component = VelocityComponent::uz;
  else if (comp == "utheta") s.component = VelocityComponent::utheta;
  else if (comp == "b") s.component = VelocityComponent::b;
  else bad("decay.component", "unknown value '" + comp + "' (ur, uz, utheta, b)");
  const bool swirl_source = s.source == VorticityComponent::r_and_z;
  require(swirl_source == (s.component == VelocityComponent::utheta), "decay.component",
          "utheta needs profile.component = r_and_z, the others need theta");

  const double r0 = c.get_double("decay.r_min"), r1 = c.get_double("decay.r_max");
  require(r0 > 1.0, "decay.r_min", "must exceed 1");
  require(r1 >= r0, "decay.r_max", "must be >= decay.r_min");
  for (double r = r0; r <= r1 * (1.0 + 1e-12); r *= 2.0) s.ladder.push_back(r);
  require(s.ladder.size() >= 5, "decay.r_max", "the dyadic ladder needs at least 5 radii");
  s.slope_tolerance = c.get_double("decay.slope_tolerance");
  require(s.slope_tolerance >= 0.0, "decay.slope_tolerance", "must be >= 0");

  DecayTraceOptions& t = s.trace;
  t.spec = quadrature_spec(c);
  t.split_from_beta = c.get_bool("decay.split_from_beta");
  t.z = c.get_double("decay.z");
  t.tol_factor = c.get_double("decay.tol_factor");
  require(t.tol_factor > 0.0, "decay.tol_factor", "must be > 0");
  t.max_relative_error = c.get_double("decay.max_relative_error");
  require(t.max_relative_error > 0.0, "decay.max_relative_error", "must be > 0");
  t.workers = static_cast<unsigned>(positive_count(c, "workers"));
  for (double r : s.ladder) {
    try {
      t.spec.validate_for(r);
    } catch (const DomainError& e) {
      bad("quad.*", e.what());
    }
  }
  return s;
}

FeasibilitySettings feasibility_settings(const RunConfig& c) {
  FeasibilitySettings s;
  s.mu = c.get_double("feasibility.mu");
  require(s.mu > 0.0, "feasibility.mu", "must be > 0");
  s.n_delta = positive_count(c, "feasibility.n_delta");
  s.n_q = positive_count(c, "feasibility.n_q");
  s.mu_sweep = c.get_list("feasibility.mu_sweep");
  for (double m : s.mu_sweep) require(m > 0.0, "feasibility.mu_sweep", "values must be > 0");
  return s;
}

RoundtripSettings roundtrip_settings(const RunConfig& c) {
  RoundtripSettings s;
  s.fields = split_list(c.raw("roundtrip.fields"));
  require(!s.fields.empty(), "roundtrip.fields", "must name at least one field");
  for (const std::string& f : s.fields)
    require(f == "stream" || f == "swirl" || f == "zero", "roundtrip.fields", "unknown field '" + f + "'");
  s.center_r = c.get_double("roundtrip.center_r");
  s.center_z = c.get_double("roundtrip.center_z");
  s.radius = c.get_double("roundtrip.radius");
  s.amplitude = c.get_double("roundtrip.amplitude");
  require(s.radius > 0.0 && s.center_r - s.radius > 0.0, "roundtrip.radius",
          "the bump must stay off the axis (0 < radius < center_r)");
  s.probe_r = c.get_list("roundtrip.probe_r");
  s.probe_z = c.get_list("roundtrip.probe_z");
  require(!s.probe_r.empty() && !s.probe_z.empty(), "roundtrip.probe_r", "probe lists must be non-empty");
  for (double r : s.probe_r) require(r > 1.0, "roundtrip.probe_r", "probe radii must exceed 1");
  s.threshold = c.get_double("roundtrip.threshold");
  require(s.threshold > 0.0, "roundtrip.threshold", "must be > 0");
  s.spec = quadrature_spec(c);
  for (double r : s.probe_r) {
    try {
      s.spec.validate_for(r);
    } catch (const DomainError& e) {
      bad("quad.*", e.what());
    }
  }
  return s;
}

BmoSettings bmo_settings(const RunConfig& c) {
  BmoSettings s;
  s.k_min = static_cast<int>(c.get_int("bmo.k_min"));
  s.k_max = static_cast<int>(c.get_int("bmo.k_max"));
  require(s.k_min >= -60 && s.k_max <= 60 && s.k_max > s.k_min, "bmo.k_max", "need -60 <= k_min < k_max <= 60");
  s.ratio_threshold = c.get_double("bmo.ratio_threshold");
  require(s.ratio_threshold >= 1.0, "bmo.ratio_threshold", "must be >= 1");
  return s;
}

}  // namespace axiskit

#pragma once

// Run configuration: a key = value text file with '#' comments. Every key has
// an embedded default; unknown keys and malformed values raise ConfigError.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "axiskit/biot_savart.hpp"
#include "axiskit/geometry.hpp"
#include "axiskit/kernel_bounds.hpp"

namespace axiskit {

struct ConfigKey {
  std::string key;
  std::string default_value;
  std::string help;
};

/// All recognised keys in dump order.
const std::vector<ConfigKey>& config_keys();

class RunConfig {
 public:
  RunConfig();  // all defaults

  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text, const std::string& origin = "<string>");

  /// Throws ConfigError for unknown keys.
  void set(const std::string& key, const std::string& value);
  const std::string& raw(const std::string& key) const;

  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;

  /// Commented key = value listing of the current values.
  void dump(std::ostream& os) const;

 private:
  std::map<std::string, std::string> values_;
};

// Typed views, validated on construction (ConfigError on any violation).

struct ScanSettings {
  std::vector<EnvelopeKind> kinds;
  std::vector<double> alphas_gamma23, alphas_gamma1;
  ScanGridSpec grid;
  ScanOptions options;
};
ScanSettings scan_settings(const RunConfig& c);

struct DecaySettings {
  double beta = 3.0;
  VorticityComponent source = VorticityComponent::theta;
  AxialEnvelope envelope;
  VelocityComponent component = VelocityComponent::b;
  std::vector<double> ladder;
  double slope_tolerance = 0.1;
  DecayTraceOptions trace;
};
DecaySettings decay_settings(const RunConfig& c);

struct FeasibilitySettings {
  double mu = 1.0;
  std::size_t n_delta = 200, n_q = 200;
  std::vector<double> mu_sweep;
};
FeasibilitySettings feasibility_settings(const RunConfig& c);

struct RoundtripSettings {
  std::vector<std::string> fields;  // stream, swirl, zero
  double center_r = 3.0, center_z = 0.0, radius = 1.0, amplitude = 1.0;
  std::vector<double> probe_r, probe_z;
  double threshold = 1e-3;
  QuadratureSpec spec;
};
RoundtripSettings roundtrip_settings(const RunConfig& c);

struct BmoSettings {
  int k_min = 1, k_max = 20;
  double ratio_threshold = 1.01;
};
BmoSettings bmo_settings(const RunConfig& c);

}  // namespace axiskit

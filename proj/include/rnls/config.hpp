#ifndef RNLS_CONFIG_HPP
#define RNLS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rnls/diagnostics.hpp"
#include "rnls/dynamics.hpp"
#include "rnls/initial_data.hpp"

namespace rnls {

struct ScatterOptions {
  int windows = 8;
  /// Small-data verdict: last window below this fraction of the total.
  Real threshold = 0.01;
  /// Gaps must not increase after this time.
  Real onset = 1.0;
};

struct RunConfig {
  Real half_width = 16.0;
  int grid_points = 128;
  int band_radius = 2;
  InitialDataSpec data;
  /// data.modes = all: every mode of the band.
  bool all_modes = false;
  StepperConfig stepper{1e-3, 1.0, true, 10};
  DiagnosticsOptions diagnostics;
  ScatterOptions scatter;
  BilinearProbeSpec bilinear;
  /// Largest accepted boosted/baseline residual ratio for `covariance`.
  Real covariance_max_ratio = 3.0;
  bool write_snapshots = false;
  std::string output_dir = "out";
  std::uint64_t seed = 1;

  /// Modes named by data.modes, expanded against the band.
  std::vector<int> data_modes() const;
};

/// Every violation found while parsing, one message per entry.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

private:
  std::vector<std::string> violations_;
};

/// Line-oriented `key = value` text; `#` starts a comment. Missing keys keep
/// their defaults. Throws ConfigError listing all violations.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Cross-field and heuristic checks; returns violations (empty when valid).
std::vector<std::string> validate(const RunConfig& config);

/// Smallest half-width allowed by the heuristic L >= x_spread(0) + 2 k_max T.
Real required_half_width(const RunConfig& config);

/// Canonical `key = value` listing of every key; parse_config(echo(c)) == c.
std::string echo(const RunConfig& config);

} // namespace rnls

#endif // RNLS_CONFIG_HPP

#ifndef RNLS_RUN_HPP
#define RNLS_RUN_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rnls/config.hpp"
#include "rnls/symmetry.hpp"

namespace rnls {

/// Everything a subcommand needs beyond the run configuration.
struct RunRequest {
  std::string subcommand;
  RunConfig config;
  /// verify-resonance: modes |j| <= jmax checked against a band of radius `band` (default jmax).
  int jmax = 8;
  std::optional<int> band;
  /// covariance: element to test and an optional snapshot directory (else simulated from config).
  GroupElement element;
  std::optional<std::filesystem::path> trajectory_dir;
};

struct RunOutcome {
  bool pass = false;
  /// `<subcommand> PASS|FAIL key=value ...`
  std::string verdict;
  std::vector<std::filesystem::path> artifacts;
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand, writing CSVs and `<subcommand>.manifest` under config.output_dir.
RunOutcome run(const RunRequest& request);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

} // namespace rnls

#endif // RNLS_RUN_HPP

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dboltz/params.hpp"

namespace dboltz {

enum class RunMode { steady, transient, dsmc, rescaled_dsmc, stability, checks };
enum class InitialPreset { uniform_box, gaussian, m1, file };

std::string_view to_string(RunMode mode);
std::string_view to_string(InitialPreset preset);

/// Everything one invocation needs. Defaults are the desk-scale setup:
/// L = 20, N = 128, k = 2, residual threshold 1e-4.
struct RunConfig {
  RunMode mode = RunMode::steady;

  // [model]
  double gamma = 1.0;
  double a = 0.5;
  /// Drift coefficient; unset means the model default. 0 selects the
  /// unscaled equation (transient mode only).
  std::optional<double> c;

  // [run]
  std::uint64_t seed = 1;
  int threads = 1;

  // [grid]
  double half_width = 20.0;
  int n_cells = 128;
  int degree = 2;
  /// Gauss nodes per cell for the collision tables; 0 picks the default.
  int quad_nodes = 0;
  double budget_mb = 1024.0;

  // [stopping]
  double threshold = 1e-4;
  long max_steps = 2'000'000;
  double t_end = 10.0;
  double cfl = 0.3;
  int record_interval = 10;

  // [initial]
  InitialPreset preset = InitialPreset::uniform_box;
  /// Half width of the uniform box; sqrt(3) gives unit mass and energy.
  double width = 1.7320508075688772;
  double sigma = 1.0;
  std::string file;

  // [dsmc]
  std::size_t particles = 10'000;
  double dt = 0.05;
  int n_records = 101;
  bool log_spacing = false;
  bool stratified = false;
  int majorant_refresh = 1;

  // [stability]
  double d0 = 1e-2;

  // [checks]
  std::uint64_t check_samples = 100'000;
  int povzner_measures = 1000;

  // [output]
  std::string out_dir = ".";
  std::vector<double> orders = {0.0, 1.0, 2.0, 3.0, 4.0};

  /// Model parameters with c resolved (c = 0 allowed, see above).
  ModelParams params() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses `key = value` lines grouped under [section] headers; `#` starts a
/// comment. Keys before the first header are looked up by name in every
/// section. Unknown or repeated keys, malformed values and constraint
/// violations throw ConfigError naming the key and the 1-based line.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file; IoError if it cannot be read.
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) == c.
std::string to_config_text(const RunConfig& config);

/// Checks cross-field constraints (already done by parse_config).
void validate(const RunConfig& config);

/// %.17g.
std::string format_real(double value);

}  // namespace dboltz

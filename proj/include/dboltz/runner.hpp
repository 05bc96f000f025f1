#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "dboltz/config.hpp"
#include "dboltz/dg_field.hpp"
#include "dboltz/moments.hpp"
#include "dboltz/quadrature.hpp"

namespace dboltz {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 1,
  exit_blowup = 2,
  exit_max_steps = 3,
  exit_io = 4,
  exit_checks_failed = 5,
};

struct RunOptions {
  /// Overrides config.out_dir.
  std::optional<std::string> out_dir;
  /// Independent seeds for the particle modes, run concurrently on
  /// config.threads threads.
  int replicates = 1;
  /// Overrides config.seed.
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

/// Runs one experiment and writes its artifacts into the output directory:
/// moments.csv (time, M0, M1abs, M2, ..., residual), profile.csv (grid
/// modes), stability.csv (stability mode) and summary.json. Returns an
/// ExitCode; errors are reported on `log`.
int run(RunConfig config, const RunOptions& options, std::ostream& log);

/// Column name of moment order p: M0, M1abs, M2, M2.5, ...
std::string moment_column(double p);

/// Writes the moment table; records missing the residual leave that field
/// empty. Numbers use 17 significant digits.
void write_moments_csv(const std::string& path, std::span<const MomentRecord> records,
                       std::span<const double> orders);

/// g sampled at every cell center and at the Gauss nodes of `quad`, in
/// increasing xi.
void write_profile_csv(const std::string& path, const DGField& field, const QuadratureRule& quad);

}  // namespace dboltz

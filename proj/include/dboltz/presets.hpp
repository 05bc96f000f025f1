#pragma once

#include <string>

#include "dboltz/config.hpp"
#include "dboltz/dg_field.hpp"
#include "dboltz/ensemble.hpp"

namespace dboltz {

/// 2 / (pi (1 + xi^2)^2), the steady profile for gamma = 0.
double m1_density(double xi);

/// Density for the grid-based modes. The file preset reads two columns
/// xi,g (comma separated, optional header line, as written to profile.csv)
/// and interpolates linearly, zero outside the tabulated range.
Profile make_profile(const RunConfig& config);

/// Sampler for the particle modes. Preset draws are shifted to zero mean;
/// the file preset returns its position snapshot unchanged.
Sampler make_sampler(const RunConfig& config);

/// Profile from a two-column table file; IoError on unreadable or
/// malformed input.
Profile read_profile_table(const std::string& path);

}  // namespace dboltz

#include "dboltz/presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

#include "dboltz/errors.hpp"

namespace dboltz {

double m1_density(double xi) {
  const double d = 1.0 + xi * xi;
  return 2.0 / (std::numbers::pi * d * d);
}

Profile read_profile_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read profile table '" + path + "'");
  auto xs = std::make_shared<std::vector<double>>();
  auto gs = std::make_shared<std::vector<double>>();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    char* end = nullptr;
    const double x = std::strtod(line.c_str(), &end);
    const bool numeric = comma != std::string::npos && end == line.c_str() + comma;
    if (!numeric) {
      if (line_no == 1) continue;  // header
      throw IoError(path + ":" + std::to_string(line_no) + ": expected 'xi,g'");
    }
    const double g = std::strtod(line.c_str() + comma + 1, &end);
    if (!std::isfinite(x) || !std::isfinite(g)) throw IoError(path + ":" + std::to_string(line_no) + ": non-finite value");
    if (!xs->empty() && x <= xs->back()) {
      throw IoError(path + ":" + std::to_string(line_no) + ": xi must be strictly increasing");
    }
    xs->push_back(x);
    gs->push_back(g);
  }
  if (xs->size() < 2) throw IoError("profile table '" + path + "' needs at least two rows");
  Profile profile;
  profile.breakpoints = *xs;
  profile.density = [xs, gs](double xi) {
    if (xi < xs->front() || xi > xs->back()) return 0.0;
    const auto hi = std::upper_bound(xs->begin(), xs->end(), xi);
    if (hi == xs->end()) return gs->back();
    const std::size_t j = static_cast<std::size_t>(hi - xs->begin());
    const double t = (xi - (*xs)[j - 1]) / ((*xs)[j] - (*xs)[j - 1]);
    return (1.0 - t) * (*gs)[j - 1] + t * (*gs)[j];
  };
  return profile;
}

Profile make_profile(const RunConfig& config) {
  switch (config.preset) {
    case InitialPreset::uniform_box: {
      const double w = config.width;
      return {[w](double xi) { return std::abs(xi) <= w ? 0.5 / w : 0.0; }, {-w, w}};
    }
    case InitialPreset::gaussian: {
      const double s = config.sigma;
      return {[s](double xi) { return std::exp(-0.5 * xi * xi / (s * s)) / (s * std::sqrt(2.0 * std::numbers::pi)); },
              {}};
    }
    case InitialPreset::m1:
      return {m1_density, {}};
    case InitialPreset::file:
      return read_profile_table(config.file);
  }
  throw InvalidArgument("unknown initial preset");
}

namespace {

Sampler centered(Sampler inner) {
  return [inner = std::move(inner)](std::size_t n, Rng& rng) {
    ParticleEnsemble e = inner(n, rng);
    center(e);
    return e;
  };
}

}  // namespace

Sampler make_sampler(const RunConfig& config) {
  switch (config.preset) {
    case InitialPreset::uniform_box:
      return centered(uniform_sampler(config.width, config.stratified));
    case InitialPreset::gaussian:
      return centered(gaussian_sampler(config.sigma));
    case InitialPreset::m1:
      return centered(m1_sampler());
    case InitialPreset::file: {
      std::ifstream in(config.file, std::ios::binary);
      if (!in) throw IoError("cannot read snapshot '" + config.file + "'");
      auto snapshot = std::make_shared<const ParticleEnsemble>(read_snapshot(in));
      // The snapshot fixes the particle count; n is ignored.
      return [snapshot](std::size_t, Rng&) { return *snapshot; };
    }
  }
  throw InvalidArgument("unknown initial preset");
}

}  // namespace dboltz

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dboltz/moments.hpp"

namespace dboltz {

using Rng = std::mt19937_64;

/// Equal-weight empirical measure (1/n) sum_i delta_{x_i}.
class ParticleEnsemble {
 public:
  ParticleEnsemble() = default;
  /// Throws InvalidArgument for fewer than two particles or non-finite input.
  explicit ParticleEnsemble(std::vector<double> positions);

  std::size_t size() const noexcept { return positions_.size(); }
  std::span<const double> positions() const noexcept { return positions_; }
  std::vector<double>& mutable_positions() noexcept { return positions_; }

  /// Number of interaction events applied so far.
  std::uint64_t generation() const noexcept { return generation_; }
  void add_generations(std::uint64_t events) noexcept { generation_ += events; }

  double mean() const;
  /// (1/n) sum |x_i|^p.
  double moment(double p) const;
  double min() const;
  double max() const;

  MomentRecord moments(std::span<const double> orders, double time, TimeAxis axis = TimeAxis::original) const;

  friend bool operator==(const ParticleEnsemble&, const ParticleEnsemble&) = default;

 private:
  std::vector<double> positions_;
  std::uint64_t generation_ = 0;
};

/// Every position multiplied by factor > 0.
ParticleEnsemble pushforward_scale(const ParticleEnsemble& ensemble, double factor);

/// Draws an ensemble of n particles.
using Sampler = std::function<ParticleEnsemble(std::size_t n, Rng& rng)>;

/// Uniform on [-w, w]. With `stratified`, one draw per quantile bin
/// ((i + U_i) / n), which removes most of the sampling noise in the moments.
Sampler uniform_sampler(double half_width, bool stratified = false);
Sampler gaussian_sampler(double sigma);
/// Density 2 / (pi (1 + x^2)^2): a Student t with 3 degrees of freedom over sqrt(3).
Sampler m1_sampler();
/// Shifts an ensemble so its mean is exactly zero (up to rounding).
void center(ParticleEnsemble& ensemble);

/// Snapshot format: little-endian uint64 count followed by that many
/// little-endian IEEE doubles.
void write_snapshot(std::ostream& out, const ParticleEnsemble& ensemble);
ParticleEnsemble read_snapshot(std::istream& in);

}  // namespace dboltz

#include "dboltz/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "dboltz/errors.hpp"

namespace dboltz {

ParticleEnsemble::ParticleEnsemble(std::vector<double> positions) : positions_(std::move(positions)) {
  if (positions_.size() < 2) throw InvalidArgument("an ensemble needs at least two particles");
  for (const double x : positions_) {
    if (!std::isfinite(x)) throw InvalidArgument("non-finite particle position");
  }
}

double ParticleEnsemble::mean() const {
  double s = 0.0;
  for (const double x : positions_) s += x;
  return s / static_cast<double>(positions_.size());
}

double ParticleEnsemble::moment(double p) const {
  double s = 0.0;
  if (p == 0.0) return 1.0;
  if (p == 2.0) {
    for (const double x : positions_) s += x * x;
  } else if (p == 1.0) {
    for (const double x : positions_) s += std::abs(x);
  } else if (p == 4.0) {
    for (const double x : positions_) s += (x * x) * (x * x);
  } else {
    for (const double x : positions_) s += std::pow(std::abs(x), p);
  }
  return s / static_cast<double>(positions_.size());
}

double ParticleEnsemble::min() const { return *std::min_element(positions_.begin(), positions_.end()); }
double ParticleEnsemble::max() const { return *std::max_element(positions_.begin(), positions_.end()); }

MomentRecord ParticleEnsemble::moments(std::span<const double> orders, double time, TimeAxis axis) const {
  validate_orders(orders);
  MomentRecord rec;
  rec.time = time;
  rec.axis = axis;
  for (const double p : orders) rec.moments[p] = moment(p);
  rec.momentum = mean();
  return rec;
}

ParticleEnsemble pushforward_scale(const ParticleEnsemble& ensemble, double factor) {
  if (!(factor > 0.0)) throw InvalidArgument("push-forward factor must be positive");
  ParticleEnsemble out = ensemble;
  for (double& x : out.mutable_positions()) x *= factor;
  return out;
}

Sampler uniform_sampler(double half_width, bool stratified) {
  if (!(half_width > 0.0)) throw InvalidArgument("uniform sampler needs a positive half width");
  return [half_width, stratified](std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double q = stratified ? (static_cast<double>(i) + u(rng)) / static_cast<double>(n) : u(rng);
      xs[i] = half_width * (2.0 * q - 1.0);
    }
    return ParticleEnsemble(std::move(xs));
  };
}

Sampler gaussian_sampler(double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian sampler needs sigma > 0");
  return [sigma](std::size_t n, Rng& rng) {
    std::normal_distribution<double> d(0.0, sigma);
    std::vector<double> xs(n);
    for (double& x : xs) x = d(rng);
    return ParticleEnsemble(std::move(xs));
  };
}

Sampler m1_sampler() {
  return [](std::size_t n, Rng& rng) {
    std::student_t_distribution<double> d(3.0);
    const double scale = 1.0 / std::sqrt(3.0);
    std::vector<double> xs(n);
    for (double& x : xs) x = scale * d(rng);
    return ParticleEnsemble(std::move(xs));
  };
}

void center(ParticleEnsemble& ensemble) {
  const double m = ensemble.mean();
  for (double& x : ensemble.mutable_positions()) x -= m;
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw IoError("truncated particle snapshot");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const ParticleEnsemble& ensemble) {
  put_le<std::uint64_t>(out, ensemble.size());
  for (const double x : ensemble.positions()) put_le<double>(out, x);
  if (!out) throw IoError("failed to write particle snapshot");
}

ParticleEnsemble read_snapshot(std::istream& in) {
  const auto n = get_le<std::uint64_t>(in);
  std::vector<double> xs(n);
  for (double& x : xs) x = get_le<double>(in);
  return ParticleEnsemble(std::move(xs));
}

}  // namespace dboltz

#include "dboltz/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dboltz/errors.hpp"

namespace dboltz {

double w1_distance(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw InvalidArgument("W1 of an empty sample");
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  if (xs.size() == ys.size()) {
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += std::abs(xs[i] - ys[i]);
    return s / static_cast<double>(xs.size());
  }
  // Sweep the merged support, integrating |F_x - F_y| between breakpoints.
  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double total = 0.0;
  double prev = std::min(xs.front(), ys.front());
  while (i < xs.size() || j < ys.size()) {
    const double next = (j >= ys.size() || (i < xs.size() && xs[i] <= ys[j])) ? xs[i] : ys[j];
    total += std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny) * (next - prev);
    while (i < xs.size() && xs[i] == next) ++i;
    while (j < ys.size() && ys[j] == next) ++j;
    prev = next;
  }
  return total;
}

double w1_distance(const ParticleEnsemble& x, const ParticleEnsemble& y) {
  return w1_distance(x.positions(), y.positions());
}

double wp_distance(std::span<const double> x, std::span<const double> y, double p) {
  if (x.empty() || y.empty()) throw InvalidArgument("Wp of an empty sample");
  if (x.size() != y.size()) throw InvalidArgument("Wp needs equal sample sizes");
  if (!(p >= 1.0)) throw InvalidArgument("Wp needs p >= 1");
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += std::pow(std::abs(xs[i] - ys[i]), p);
  return std::pow(s / static_cast<double>(xs.size()), 1.0 / p);
}

}  // namespace dboltz

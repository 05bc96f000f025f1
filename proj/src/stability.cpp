#include "dboltz/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dboltz/dsmc.hpp"
#include "dboltz/errors.hpp"
#include "dboltz/wasserstein.hpp"

namespace dboltz {

double osgood_psi(double x) {
  if (!(x > 0.0)) throw InvalidArgument("Osgood function needs x > 0");
  return x <= 1.0 ? std::log(1.0 - std::log(x)) : -std::log1p(std::log(x));
}

double osgood_psi_inverse(double y) {
  return y >= 0.0 ? std::exp(1.0 - std::exp(y)) : std::exp(std::exp(-y) - 1.0);
}

double StabilityResult::envelope(double t) const {
  return osgood_psi_inverse(osgood_psi(initial_distance) - fitted_k * t);
}

ParticleEnsemble dilate_to_distance(const ParticleEnsemble& mu0, double d0) {
  if (!(d0 >= 0.0)) throw InvalidArgument("target distance must be >= 0");
  const double m1 = mu0.moment(1.0);
  if (!(m1 > 0.0)) throw InvalidArgument("cannot dilate a measure concentrated at 0");
  return pushforward_scale(mu0, 1.0 + d0 / m1);
}

StabilityResult stability_experiment(const ParticleEnsemble& mu0, const ParticleEnsemble& nu0,
                                     const ModelParams& params, double t_end, std::uint64_t seed,
                                     int n_records, double dt_max) {
  if (mu0.size() != nu0.size()) throw InvalidArgument("coupled ensembles must have equal size");
  if (!(t_end >= 0.0)) throw InvalidArgument("t_end must be >= 0");
  if (n_records < 2) throw InvalidArgument("need at least two records");
  if (!(dt_max > 0.0)) throw InvalidArgument("dt_max must be positive");
  const std::size_t n = mu0.size();

  // Rank coupling: particle k of each system starts at the k-th order statistic.
  std::vector<double> x(mu0.positions().begin(), mu0.positions().end());
  std::vector<double> y(nu0.positions().begin(), nu0.positions().end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());

  StabilityResult result;
  result.initial_distance = w1_distance(x, y);
  const double a = params.a();
  const double b = params.b();
  const double gamma = params.gamma();
  auto kernel = [gamma](double d) { return gamma == 0.0 ? 1.0 : std::pow(std::abs(d), gamma); };
  auto majorant_of = [&](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return kernel(*hi - *lo);
  };

  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_other(0, n - 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double t = 0.0;
  for (int r = 0; r < n_records; ++r) {
    const double target = t_end * r / (n_records - 1);
    while (t < target) {
      const double lam = std::max(majorant_of(x), majorant_of(y));
      if (!(lam > 0.0)) {
        t = target;
        break;
      }
      double dt = std::min(dt_max, 0.1 * n / ((n - 1.0) * lam));
      if (t + dt > target) dt = target - t;
      std::poisson_distribution<std::uint64_t> count(0.5 * (n - 1.0) * lam * dt);
      const std::uint64_t m = count(rng);
      for (std::uint64_t c = 0; c < m; ++c) {
        const std::size_t i = pick(rng);
        std::size_t j = pick_other(rng);
        if (j >= i) ++j;
        const double u = unit(rng) * lam;
        // Supports only shrink within a step, so lam bounds both kernels.
        if (u < kernel(x[i] - x[j])) {
          const double xi = x[i];
          x[i] = a * xi + b * x[j];
          x[j] = b * xi + a * x[j];
        }
        if (u < kernel(y[i] - y[j])) {
          const double yi = y[i];
          y[i] = a * yi + b * y[j];
          y[j] = b * yi + a * y[j];
        }
      }
      t = (t + dt >= target) ? target : t + dt;
    }
    result.times.push_back(target);
    result.distances.push_back(w1_distance(x, y));
  }

  const double d0 = result.initial_distance;
  if (d0 > 0.0) {
    for (std::size_t k = 1; k < result.times.size(); ++k) {
      const double d = result.distances[k];
      if (!(d > 0.0) || !(result.times[k] > 0.0)) continue;
      result.fitted_k = std::max(result.fitted_k, (osgood_psi(d0) - osgood_psi(d)) / result.times[k]);
    }
  }
  return result;
}

}  // namespace dboltz

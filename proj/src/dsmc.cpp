#include "dboltz/dsmc.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dboltz/errors.hpp"
#include "dboltz/rescaling.hpp"

namespace dboltz {

double support_majorant(const ParticleEnsemble& ensemble, double gamma) {
  if (gamma == 0.0) return 1.0;
  const auto [lo, hi] = std::minmax_element(ensemble.positions().begin(), ensemble.positions().end());
  return std::pow(*hi - *lo, gamma);
}

StepStats dsmc_advance(ParticleEnsemble& ensemble, const ModelParams& params, double dt, Rng& rng,
                       double& majorant) {
  if (!(dt > 0.0)) throw InvalidArgument("DSMC step needs dt > 0");
  StepStats stats;
  const std::size_t n = ensemble.size();
  if (!(majorant > 0.0)) return stats;  // collapsed support: nothing can happen
  const double a = params.a();
  const double b = params.b();
  const double gamma = params.gamma();
  auto& x = ensemble.mutable_positions();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_other(0, n - 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Undo {
    std::size_t i, j;
    double xi, xj;
  };
  std::vector<Undo> undo;
  for (;;) {
    undo.clear();
    std::poisson_distribution<std::uint64_t> count(0.5 * static_cast<double>(n - 1) * majorant * dt);
    const std::uint64_t m = count(rng);
    bool violated = false;
    std::uint64_t accepted = 0;
    for (std::uint64_t c = 0; c < m; ++c) {
      const std::size_t i = pick(rng);
      std::size_t j = pick_other(rng);
      if (j >= i) ++j;
      const double d = std::abs(x[i] - x[j]);
      const double k = gamma == 0.0 ? 1.0 : std::pow(d, gamma);
      const double u = unit(rng);
      if (k > majorant) {
        violated = true;
        break;
      }
      if (u * majorant < k) {
        undo.push_back({i, j, x[i], x[j]});
        const double xi = x[i];
        const double xj = x[j];
        x[i] = a * xi + b * xj;
        x[j] = b * xi + a * xj;
        ++accepted;
      }
    }
    stats.candidates += m;
    if (!violated) {
      stats.accepted = accepted;
      ensemble.add_generations(accepted);
      return stats;
    }
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      x[it->i] = it->xi;
      x[it->j] = it->xj;
    }
    majorant *= 2.0;
    ++stats.majorant_doublings;
  }
}

ParticleEnsemble dsmc_step(ParticleEnsemble ensemble, const ModelParams& params, double dt, Rng& rng) {
  double majorant = support_majorant(ensemble, params.gamma());
  dsmc_advance(ensemble, params, dt, rng, majorant);
  return ensemble;
}

std::vector<double> dsmc_record_times(const DsmcConfig& config) {
  std::vector<double> times;
  if (!config.record_times.empty()) {
    times = config.record_times;
  } else {
    const int n = std::max(2, config.n_records);
    times.push_back(0.0);
    for (int r = 1; r < n; ++r) {
      if (config.log_spacing) {
        // n - 1 geometric points from t_end * 1e-4 to t_end.
        const double f = n > 2 ? static_cast<double>(r - 1) / (n - 2) : 1.0;
        times.push_back(config.t_end * std::pow(1e-4, 1.0 - f));
      } else {
        times.push_back(config.t_end * static_cast<double>(r) / (n - 1));
      }
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  for (const double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("record times must be finite and >= 0");
  }
  return times;
}

namespace {

void validate(const DsmcConfig& config) {
  if (config.n_particles < 2) throw InvalidArgument("DSMC needs at least two particles");
  if (!(config.dt > 0.0)) throw InvalidArgument("DSMC dt must be positive");
  if (!(config.t_end >= 0.0)) throw InvalidArgument("DSMC t_end must be >= 0");
  if (config.majorant_refresh < 1) throw InvalidArgument("majorant refresh interval must be >= 1");
  validate_orders(config.orders);
}

// Drives the ensemble through the given times, calling emit(k, ensemble) at
// each. Returns false if the support collapsed first.
template <typename Emit>
bool march(ParticleEnsemble& ens, const DsmcConfig& config, const ModelParams& params,
           const std::vector<double>& times, Rng& rng, DsmcResult& result, Emit emit) {
  double t = 0.0;
  double majorant = support_majorant(ens, params.gamma());
  long steps = 0;
  const double n = static_cast<double>(ens.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    while (t < times[k]) {
      if (ens.max() == ens.min()) {
        result.collapsed = true;
        return false;
      }
      if (steps % config.majorant_refresh == 0) majorant = support_majorant(ens, params.gamma());
      double dt = std::min(config.dt, 0.1 * n / ((n - 1.0) * majorant));
      bool hit = false;
      if (t + dt >= times[k]) {
        dt = times[k] - t;
        hit = true;
      }
      const StepStats s = dsmc_advance(ens, params, dt, rng, majorant);
      result.events += s.accepted;
      result.candidates += s.candidates;
      result.majorant_doublings += s.majorant_doublings;
      t = hit ? times[k] : t + dt;
      ++steps;
    }
    emit(k, ens);
  }
  return true;
}

}  // namespace

DsmcResult run_dsmc(const DsmcConfig& config, const ModelParams& params, ParticleEnsemble initial) {
  validate(config);
  DsmcResult result;
  Rng rng(config.seed);
  std::vector<double> times = dsmc_record_times(config);
  times.erase(std::remove_if(times.begin(), times.end(), [&](double t) { return t > config.t_end; }), times.end());
  march(initial, config, params, times, rng, result, [&](std::size_t k, const ParticleEnsemble& e) {
    result.records.push_back(e.moments(config.orders, times[k], TimeAxis::original));
  });
  result.final_state = std::move(initial);
  return result;
}

DsmcResult run_dsmc(const DsmcConfig& config, const ModelParams& params, const Sampler& initial) {
  validate(config);
  Rng sampler_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  return run_dsmc(config, params, initial(config.n_particles, sampler_rng));
}

DsmcResult rescaled_dsmc(const DsmcConfig& config, const ModelParams& params, const Sampler& initial) {
  validate(config);
  Rng sampler_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  ParticleEnsemble ens = initial(config.n_particles, sampler_rng);
  std::vector<double> s_times = dsmc_record_times(config);
  s_times.erase(std::remove_if(s_times.begin(), s_times.end(), [&](double s) { return s > config.t_end; }),
                s_times.end());
  std::vector<double> t_times;
  for (const double s : s_times) t_times.push_back(unrescale_time(s, params));
  DsmcResult result;
  Rng rng(config.seed);
  march(ens, config, params, t_times, rng, result, [&](std::size_t k, const ParticleEnsemble& e) {
    const double v = scale_factor(t_times[k], params);
    MomentRecord rec = e.moments(config.orders, s_times[k], TimeAxis::rescaled);
    for (auto& [p, m] : rec.moments) m *= std::pow(v, p);
    rec.momentum = *rec.momentum * v;
    result.records.push_back(std::move(rec));
  });
  result.final_state = std::move(ens);
  return result;
}

std::uint64_t replicate_seed(std::uint64_t base, int r) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(r)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<DsmcResult> run_dsmc_replicates(const DsmcConfig& config, const ModelParams& params,
                                            const Sampler& initial, int replicates, int threads, bool rescaled) {
  if (replicates < 1) throw InvalidArgument("need at least one replicate");
  threads = std::clamp(threads, 1, replicates);
  std::vector<DsmcResult> out(replicates);
  auto work = [&](int r) {
    DsmcConfig c = config;
    c.seed = replicate_seed(config.seed, r);
    out[r] = rescaled ? rescaled_dsmc(c, params, initial) : run_dsmc(c, params, initial);
  };
  if (threads == 1) {
    for (int r = 0; r < replicates; ++r) work(r);
    return out;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int r = t; r < replicates; r += threads) work(r);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

double energy_rate(const ParticleEnsemble& ensemble, const ModelParams& params) {
  const double g = params.gamma();
  const double n = static_cast<double>(ensemble.size());
  std::vector<double> xs(ensemble.positions().begin(), ensemble.positions().end());
  double total = 0.0;
  const double power = 2.0 + g;
  if (power == 2.0 || power == 3.0 || power == 4.0) {
    // Sorted prefix sums: sum_{i<j} (x_j - x_i)^m expands into power sums.
    std::sort(xs.begin(), xs.end());
    const int m = static_cast<int>(power);
    double s[5] = {0, 0, 0, 0, 0};  // s[r] = sum over earlier points of x^r
    const double binom[5][5] = {{1}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1}};
    for (const double xj : xs) {
      // (xj - xi)^m = sum_r C(m, r) xj^(m-r) (-xi)^r
      double term = 0.0;
      for (int r = 0; r <= m; ++r) {
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        term += binom[m][r] * std::pow(xj, m - r) * sign * s[r];
      }
      total += term;
      double p = 1.0;
      for (int r = 0; r <= 4; ++r) {
        s[r] += p;
        p *= xj;
      }
    }
    total *= 2.0;  // ordered pairs
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (i != j) total += std::pow(std::abs(xs[i] - xs[j]), power);
      }
    }
  }
  return -params.a() * params.b() * total / (n * n);
}

}  // namespace dboltz

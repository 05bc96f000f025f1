#pragma once

#include <cstdint>
#include <vector>

#include "dboltz/ensemble.hpp"
#include "dboltz/moments.hpp"
#include "dboltz/params.hpp"

namespace dboltz {

struct DsmcConfig {
  std::size_t n_particles = 10'000;
  /// Largest step; steps are also capped so that at most a tenth of the
  /// particles are candidates per step.
  double dt = 0.05;
  double t_end = 1.0;
  std::uint64_t seed = 1;
  /// Steps between recomputations of the majorant (max - min)^gamma. The
  /// support only shrinks, so a stale majorant stays valid, just looser.
  int majorant_refresh = 1;
  std::vector<double> orders = default_moment_orders();
  /// Output times. When empty, `n_records` times are spread over [0, t_end],
  /// geometrically if `log_spacing` (starting at t_end * 1e-4).
  std::vector<double> record_times;
  int n_records = 101;
  bool log_spacing = false;
};

struct StepStats {
  std::uint64_t candidates = 0;
  std::uint64_t accepted = 0;
  int majorant_doublings = 0;
};

/// Advances the ensemble by dt in place. Candidate pairs arrive as a Poisson
/// process of rate (n - 1) majorant / 2; a pair (x, y) is accepted with
/// probability |x - y|^gamma / majorant and replaced by (a x + b y, b x + a y)
/// on the spot. If a pair ever exceeds the majorant the step is undone, the
/// majorant doubled and the step redrawn.
StepStats dsmc_advance(ParticleEnsemble& ensemble, const ModelParams& params, double dt, Rng& rng,
                       double& majorant);

/// Value-semantics wrapper with a fresh majorant.
ParticleEnsemble dsmc_step(ParticleEnsemble ensemble, const ModelParams& params, double dt, Rng& rng);

/// (max - min)^gamma, or 1 when gamma = 0.
double support_majorant(const ParticleEnsemble& ensemble, double gamma);

struct DsmcResult {
  std::vector<MomentRecord> records;
  ParticleEnsemble final_state;
  bool collapsed = false;
  std::uint64_t events = 0;
  std::uint64_t candidates = 0;
  int majorant_doublings = 0;
};

/// Output times used by run_dsmc for this config.
std::vector<double> dsmc_record_times(const DsmcConfig& config);

/// Runs the unscaled particle dynamics from sampler(n). Deterministic given
/// the seed. Stops early, flagging `collapsed`, if every particle coincides.
DsmcResult run_dsmc(const DsmcConfig& config, const ModelParams& params, const Sampler& initial);
/// Same, from a given ensemble.
DsmcResult run_dsmc(const DsmcConfig& config, const ModelParams& params, ParticleEnsemble initial);

/// Runs in original time and reports nu_s = V(s) # mu_{t(s)}: record times
/// in the config are read as s and moments M_p are multiplied by V^p.
DsmcResult rescaled_dsmc(const DsmcConfig& config, const ModelParams& params, const Sampler& initial);

/// Independent replicates with seeds derived from config.seed, run on up to
/// `threads` threads and returned in seed order.
std::vector<DsmcResult> run_dsmc_replicates(const DsmcConfig& config, const ModelParams& params,
                                            const Sampler& initial, int replicates, int threads = 1,
                                            bool rescaled = false);

/// Seed of replicate r.
std::uint64_t replicate_seed(std::uint64_t base, int r);

/// -ab (1/n^2) sum_{i != j} |x_i - x_j|^(2 + gamma): the exact initial rate
/// of change of M_2 under the particle dynamics. O(n log n) for gamma in
/// {0, 1, 2}, O(n^2) otherwise.
double energy_rate(const ParticleEnsemble& ensemble, const ModelParams& params);

}  // namespace dboltz

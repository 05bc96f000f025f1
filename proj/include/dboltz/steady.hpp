#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "dboltz/collision.hpp"
#include "dboltz/dg_field.hpp"
#include "dboltz/moments.hpp"
#include "dboltz/params.hpp"

namespace dboltz {

struct SolverOptions {
  double cfl = 0.3;
  double threshold = 1e-4;
  long max_steps = 2'000'000;
  /// Moments are recorded every this many accepted steps.
  int record_interval = 10;
  std::vector<double> orders = default_moment_orders();
  /// Transient runs only: when non-empty, records are taken exactly at these
  /// times (steps are shortened to hit them) instead of every interval.
  std::vector<double> sample_times;
  /// Called after every accepted step with (step, time, residual).
  std::function<void(long, double, double)> progress;
};

struct SteadyResult {
  DGField final_field;
  long n_steps = 0;
  double final_residual = std::numeric_limits<double>::infinity();
  double final_time = 0.0;
  std::vector<MomentRecord> moment_history;
  std::vector<double> residual_history;
  double wall_time = 0.0;
};

struct TransientResult {
  DGField final_field;
  long n_steps = 0;
  std::vector<MomentRecord> records;
};

/// Marches rk3_step with choose_dt until the residual drops to the
/// threshold. Throws NumericalBlowup or MaxStepsExceeded with the last
/// finite state attached.
SteadyResult run_to_steady(const DGField& initial, const ModelParams& params, const CollisionWorkspace& ws,
                           const SolverOptions& options);

/// Integrates to t_end, truncating the final step. Time is s for c > 0 and
/// the original t for c = 0.
TransientResult run_transient(const DGField& initial, const ModelParams& params, const CollisionWorkspace& ws,
                              const SolverOptions& options, double t_end);

}  // namespace dboltz

#include "dboltz/steady.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>

#include "dboltz/drift.hpp"
#include "dboltz/errors.hpp"
#include "dboltz/timestepping.hpp"

namespace dboltz {

namespace {

TimeAxis axis_of(const ModelParams& params) {
  return params.drift_coeff() == 0.0 ? TimeAxis::original : TimeAxis::rescaled;
}

MomentRecord record(const DGField& field, const SolverOptions& options, double time, TimeAxis axis,
                    std::optional<double> res) {
  MomentRecord rec = field_moments(field, options.orders, time, axis);
  rec.residual = res;
  return rec;
}

void validate(const SolverOptions& options) {
  if (!(options.cfl > 0.0 && options.cfl <= 1.0)) throw InvalidArgument("cfl must lie in (0, 1]");
  if (options.record_interval < 1) throw InvalidArgument("record interval must be >= 1");
  if (options.max_steps < 0) throw InvalidArgument("max steps must be >= 0");
  if (std::isnan(options.threshold)) throw InvalidArgument("threshold is NaN");
  validate_orders(options.orders);
}

}  // namespace

SteadyResult run_to_steady(const DGField& initial, const ModelParams& params, const CollisionWorkspace& ws,
                           const SolverOptions& options) {
  validate(options);
  const auto start = std::chrono::steady_clock::now();
  const TimeAxis axis = axis_of(params);
  const RhsFunction rhs = [&](const DGField& f) { return rhs_total(f, params, ws); };

  SteadyResult result{initial, 0, std::numeric_limits<double>::infinity(), 0.0, {}, {}, 0.0};
  result.moment_history.push_back(record(initial, options, 0.0, axis, std::nullopt));
  double time = 0.0;
  long step = 0;
  double res = std::numeric_limits<double>::infinity();
  DGField current = initial;
  while (!(res <= options.threshold)) {
    if (step >= options.max_steps) {
      throw MaxStepsExceeded(step, res, std::make_shared<const DGField>(current));
    }
    const double dt = choose_dt(current, params, ws, options.cfl);
    DGField next = rk3_step(current, dt, rhs, step + 1);
    res = residual(current, next, dt);
    if (!std::isfinite(res)) throw NumericalBlowup(step + 1, std::make_shared<const DGField>(current));
    current = std::move(next);
    time += dt;
    ++step;
    result.residual_history.push_back(res);
    if (options.progress) options.progress(step, time, res);
    if (step % options.record_interval == 0 || res <= options.threshold) {
      result.moment_history.push_back(record(current, options, time, axis, res));
    }
  }
  result.final_field = std::move(current);
  result.n_steps = step;
  result.final_residual = res;
  result.final_time = time;
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

TransientResult run_transient(const DGField& initial, const ModelParams& params, const CollisionWorkspace& ws,
                              const SolverOptions& options, double t_end) {
  validate(options);
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be finite and >= 0");
  const TimeAxis axis = axis_of(params);
  const RhsFunction rhs = [&](const DGField& f) { return rhs_total(f, params, ws); };

  std::vector<double> samples;
  for (const double t : options.sample_times) {
    if (t > 0.0 && t <= t_end) samples.push_back(t);
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  const bool sampled = !samples.empty();
  if (sampled && samples.back() < t_end) samples.push_back(t_end);

  TransientResult result{initial, 0, {}};
  result.records.push_back(record(initial, options, 0.0, axis, std::nullopt));
  DGField current = initial;
  double time = 0.0;
  long step = 0;
  std::size_t next_sample = 0;
  while (time < t_end) {
    if (step >= options.max_steps) {
      throw MaxStepsExceeded(step, std::numeric_limits<double>::quiet_NaN(),
                             std::make_shared<const DGField>(current));
    }
    double dt = choose_dt(current, params, ws, options.cfl);
    const double stop = sampled ? samples[next_sample] : t_end;
    bool hit = false;
    if (time + dt >= stop) {
      dt = stop - time;
      hit = true;
    }
    DGField next = rk3_step(current, dt, rhs, step + 1);
    const double res = residual(current, next, dt);
    current = std::move(next);
    time = hit ? stop : time + dt;
    ++step;
    if (options.progress) options.progress(step, time, res);
    const bool last = hit && stop == t_end;
    if (sampled ? hit : (step % options.record_interval == 0 || last)) {
      result.records.push_back(record(current, options, time, axis, res));
      if (sampled && hit) ++next_sample;
    }
    if (last) break;
  }
  result.final_field = std::move(current);
  result.n_steps = step;
  return result;
}

}  // namespace dboltz

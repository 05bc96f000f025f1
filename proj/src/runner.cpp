#include "dboltz/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "dboltz/checks.hpp"
#include "dboltz/collision.hpp"
#include "dboltz/decay.hpp"
#include "dboltz/dsmc.hpp"
#include "dboltz/errors.hpp"
#include "dboltz/presets.hpp"
#include "dboltz/stability.hpp"
#include "dboltz/steady.hpp"

#ifndef DBOLTZ_VERSION
#define DBOLTZ_VERSION "unknown"
#endif

namespace dboltz {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

json moments_json(const MomentRecord& rec) {
  json j = json::object();
  for (const auto& [p, v] : rec.moments) j[moment_column(p)] = v;
  if (rec.momentum) j["momentum"] = *rec.momentum;
  j["time"] = rec.time;
  return j;
}

json or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Shared by both solver modes.
struct GridSetup {
  ModelParams params;
  Grid grid;
  QuadratureRule quad;
  CollisionWorkspace ws;
  DGField initial;
};

GridSetup make_grid_setup(const RunConfig& config) {
  const ModelParams params = config.params();
  const Grid grid(config.half_width, config.n_cells);
  const int nodes = config.quad_nodes > 0 ? config.quad_nodes : default_quadrature_nodes(config.degree, params.gamma());
  QuadratureRule quad = gauss_legendre(nodes);
  const auto budget = static_cast<std::size_t>(config.budget_mb * 1024.0 * 1024.0);
  CollisionWorkspace ws = build_workspace(grid, config.degree, quad, params, budget);
  ws.set_threads(config.threads);
  DGField initial = project_initial(make_profile(config), grid, config.degree, gauss_legendre(std::max(8, config.degree + 2)));
  return {params, grid, std::move(quad), std::move(ws), std::move(initial)};
}

SolverOptions solver_options(const RunConfig& config, bool quiet, std::ostream& log) {
  SolverOptions o;
  o.cfl = config.cfl;
  o.threshold = config.threshold;
  o.max_steps = config.max_steps;
  o.record_interval = config.record_interval;
  o.orders = config.orders;
  if (!quiet) {
    o.progress = [&log](long step, double time, double res) {
      if (step % 1000 == 0) log << "step " << step << "  time " << time << "  residual " << res << '\n';
    };
  }
  return o;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

int run_steady(const RunConfig& config, const RunOptions& options, const fs::path& dir, json& summary,
               std::ostream& log) {
  GridSetup s = make_grid_setup(config);
  const MomentRecord m0 = field_moments(s.initial, config.orders);
  summary["initial_moments"] = moments_json(m0);
  summary["table_bytes"] = s.ws.table_bytes();
  try {
    const SteadyResult r = run_to_steady(s.initial, s.params, s.ws, solver_options(config, options.quiet, log));
    write_moments_csv((dir / "moments.csv").string(), r.moment_history, config.orders);
    write_profile_csv((dir / "profile.csv").string(), r.final_field, s.quad);
    const MomentRecord fin = field_moments(r.final_field, config.orders, r.final_time);
    summary["final_moments"] = moments_json(fin);
    summary["n_steps"] = r.n_steps;
    summary["final_residual"] = or_null(r.final_residual);
    summary["final_time"] = r.final_time;
    const double mass0 = field_mass(s.initial);
    summary["mass_drift"] = std::abs(field_mass(r.final_field) - mass0) / mass0;
    summary["momentum_drift"] = std::abs(field_momentum(r.final_field) - field_momentum(s.initial)) / mass0;
    summary["g_at_0"] = 0.5 * (eval_field(r.final_field, 0.0, Trace::left) + eval_field(r.final_field, 0.0, Trace::right));
    if (s.params.gamma() == 0.0) summary["l1_to_m1"] = l1_distance(r.final_field, m1_density);
    if (s.params.gamma() > 0.0 && s.params.drift_coeff() > 0.0) {
      std::map<double, double> init;
      for (const auto& [p, v] : m0.moments) {
        if (p >= 2.0) init[p] = v;
      }
      const BoundReport br = check_rescaled_bounds(r.moment_history, s.params, init);
      json b = json::object();
      for (const auto& [p, bound] : br.bounds) {
        b[moment_column(p)] = {{"bound", bound}, {"max_ratio", br.max_ratio.at(p)}};
      }
      summary["rescaled_bounds"] = b;
      summary["bound_violations"] = br.violations.size();
    }
    return exit_ok;
  } catch (const MaxStepsExceeded& e) {
    if (e.last_state()) write_profile_csv((dir / "profile.csv").string(), *e.last_state(), s.quad);
    summary["status"] = "max-steps";
    summary["n_steps"] = e.step();
    summary["final_residual"] = or_null(e.residual());
    if (e.last_state()) summary["final_moments"] = moments_json(field_moments(*e.last_state(), config.orders));
    log << e.what() << '\n';
    return exit_max_steps;
  }
}

int run_transient_mode(const RunConfig& config, const RunOptions& options, const fs::path& dir, json& summary,
                       std::ostream& log) {
  GridSetup s = make_grid_setup(config);
  const TransientResult r =
      run_transient(s.initial, s.params, s.ws, solver_options(config, options.quiet, log), config.t_end);
  write_moments_csv((dir / "moments.csv").string(), r.records, config.orders);
  write_profile_csv((dir / "profile.csv").string(), r.final_field, s.quad);
  summary["n_steps"] = r.n_steps;
  summary["time_axis"] = s.params.drift_coeff() == 0.0 ? "original" : "rescaled";
  if (!r.records.empty()) {
    summary["initial_moments"] = moments_json(r.records.front());
    summary["final_moments"] = moments_json(r.records.back());
  }
  if (s.params.drift_coeff() == 0.0 && !r.records.empty() && r.records.front().has(2.0)) {
    const double e0 = r.records.front().energy();
    double worst = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < r.records.size(); ++i) {
      const double e = r.records[i].energy();
      worst = std::max(worst, e / decay_upper(2.0, e0, s.params, r.records[i].time));
      if (i > 0 && e > r.records[i - 1].energy()) monotone = false;
    }
    summary["energy_monotone"] = monotone;
    summary["decay_upper_max_ratio"] = worst;
  }
  return exit_ok;
}

DsmcConfig dsmc_config(const RunConfig& config) {
  DsmcConfig d;
  d.n_particles = config.particles;
  d.dt = config.dt;
  d.t_end = config.t_end;
  d.seed = config.seed;
  d.majorant_refresh = config.majorant_refresh;
  d.orders = config.orders;
  d.n_records = config.n_records;
  d.log_spacing = config.log_spacing;
  return d;
}

// Record-wise mean over replicates, truncated to the shortest run.
std::vector<MomentRecord> mean_records(const std::vector<DsmcResult>& runs) {
  std::size_t len = runs.front().records.size();
  for (const auto& r : runs) len = std::min(len, r.records.size());
  std::vector<MomentRecord> out(runs.front().records.begin(), runs.front().records.begin() + len);
  for (std::size_t i = 0; i < len; ++i) {
    for (auto& [p, v] : out[i].moments) {
      double s = 0.0;
      for (const auto& r : runs) s += r.records[i].moment(p);
      v = s / static_cast<double>(runs.size());
    }
    out[i].momentum.reset();
  }
  return out;
}

int run_particles(const RunConfig& config, const RunOptions& options, const fs::path& dir, json& summary,
                  bool rescaled) {
  const ModelParams params = config.params();
  const DsmcConfig dc = dsmc_config(config);
  const Sampler sampler = make_sampler(config);
  std::vector<DsmcResult> runs;
  if (options.replicates == 1) {
    runs.push_back(rescaled ? rescaled_dsmc(dc, params, sampler) : run_dsmc(dc, params, sampler));
  } else {
    runs = run_dsmc_replicates(dc, params, sampler, options.replicates, config.threads, rescaled);
    for (int r = 0; r < options.replicates; ++r) {
      write_moments_csv((dir / ("moments_rep" + std::to_string(r) + ".csv")).string(), runs[r].records, config.orders);
    }
  }
  const std::vector<MomentRecord> mean = mean_records(runs);
  write_moments_csv((dir / "moments.csv").string(), mean, config.orders);
  summary["time_axis"] = rescaled ? "rescaled" : "original";
  summary["replicates"] = runs.size();

  json reps = json::array();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const DsmcResult& res = runs[r];
    json j;
    j["seed"] = options.replicates == 1 ? config.seed : replicate_seed(config.seed, static_cast<int>(r));
    j["events"] = res.events;
    j["candidates"] = res.candidates;
    j["majorant_doublings"] = res.majorant_doublings;
    j["collapsed"] = res.collapsed;
    if (!res.records.empty()) j["final_moments"] = moments_json(res.records.back());
    if (!rescaled && params.gamma() > 0.0) {
      try {
        j["haff_exponent"] = haff_fit(res.records, 2.0);
      } catch (const InsufficientData& e) {
        j["haff_exponent"] = nullptr;
        j["haff_note"] = e.what();
      }
      try {
        const LowerEnvelope env = fit_lower_envelope(res.records, 2.0, params);
        j["lower_envelope"] = {{"amplitude", env.amplitude}, {"kappa", env.kappa}};
      } catch (const std::exception&) {
        j["lower_envelope"] = nullptr;
      }
    }
    if (!rescaled && !res.records.empty() && res.records.front().has(2.0)) {
      const double e0 = res.records.front().energy();
      double worst = 0.0;
      for (const MomentRecord& rec : res.records) {
        worst = std::max(worst, rec.energy() / decay_upper(2.0, e0, params, rec.time));
      }
      j["decay_upper_max_ratio"] = worst;
    }
    if (rescaled && params.gamma() > 0.0 && !res.records.empty()) {
      std::map<double, double> init;
      for (const auto& [p, v] : res.records.front().moments) {
        if (p >= 2.0) init[p] = v;
      }
      const BoundReport br = check_rescaled_bounds(res.records, params, init);
      j["bound_violations"] = br.violations.size();
    }
    reps.push_back(std::move(j));
  }
  summary["runs"] = reps;
  if (!mean.empty()) summary["final_moments"] = moments_json(mean.back());
  return exit_ok;
}

int run_stability(const RunConfig& config, const RunOptions& options, const fs::path& dir, json& summary) {
  const ModelParams params = config.params();
  const Sampler sampler = make_sampler(config);
  const int reps = options.replicates;
  std::vector<StabilityResult> results;
  for (int r = 0; r < reps; ++r) {
    const std::uint64_t seed = reps == 1 ? config.seed : replicate_seed(config.seed, r);
    Rng rng(seed ^ 0x5bd1e995u);
    ParticleEnsemble mu0 = sampler(config.particles, rng);
    center(mu0);
    const ParticleEnsemble nu0 = dilate_to_distance(mu0, config.d0);
    results.push_back(stability_experiment(mu0, nu0, params, config.t_end, seed, config.n_records, config.dt));
  }
  const std::string path = (dir / "stability.csv").string();
  std::ofstream out = open_out(path);
  out << "time,distance,envelope\n";
  const std::size_t len = results.front().times.size();
  std::vector<double> median(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<double> d;
    for (const auto& r : results) d.push_back(r.distances[i]);
    std::sort(d.begin(), d.end());
    median[i] = d.size() % 2 ? d[d.size() / 2] : 0.5 * (d[d.size() / 2 - 1] + d[d.size() / 2]);
    out << format_real(results.front().times[i]) << ',' << format_real(median[i]) << ','
        << format_real(results.front().envelope(results.front().times[i])) << '\n';
  }
  finish(out, path);
  json ks = json::array();
  for (const auto& r : results) ks.push_back(r.fitted_k);
  summary["d0"] = config.d0;
  summary["initial_distance"] = results.front().initial_distance;
  summary["fitted_k"] = ks;
  summary["max_median_distance"] = *std::max_element(median.begin(), median.end());
  summary["final_median_distance"] = median.back();
  return exit_ok;
}

int run_checks_mode(const RunConfig& config, const RunOptions& options, json& summary, std::ostream& log) {
  const CheckReport report = run_checks(config);
  json items = json::array();
  for (const CheckItem& c : report.items) {
    items.push_back({{"name", c.name}, {"passed", c.passed}, {"measure", or_null(c.measure)}, {"detail", c.detail}});
    if (!options.quiet) log << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  summary["checks"] = items;
  summary["all_passed"] = report.all_passed();
  return report.all_passed() ? exit_ok : exit_checks_failed;
}

}  // namespace

std::string moment_column(double p) {
  if (p == 1.0) return "M1abs";
  return "M" + format_real(p);
}

void write_moments_csv(const std::string& path, std::span<const MomentRecord> records,
                       std::span<const double> orders) {
  std::ofstream out = open_out(path);
  out << "time";
  for (const double p : orders) out << ',' << moment_column(p);
  out << ",residual\n";
  for (const MomentRecord& rec : records) {
    out << format_real(rec.time);
    for (const double p : orders) {
      out << ',';
      if (rec.has(p)) out << format_real(rec.moment(p));
    }
    out << ',';
    if (rec.residual) out << format_real(*rec.residual);
    out << '\n';
  }
  finish(out, path);
}

void write_profile_csv(const std::string& path, const DGField& field, const QuadratureRule& quad) {
  std::ofstream out = open_out(path);
  out << "xi,g\n";
  const Grid& g = field.grid();
  std::vector<double> zs(quad.nodes);
  zs.push_back(0.0);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end(), [](double x, double y) { return std::abs(x - y) < 1e-14; }), zs.end());
  for (int j = 0; j < g.n_cells(); ++j) {
    for (const double z : zs) {
      out << format_real(g.to_global(j, z)) << ',' << format_real(field.eval_local(j, z)) << '\n';
    }
  }
  finish(out, path);
}

int run(RunConfig config, const RunOptions& options, std::ostream& log) {
  try {
    if (options.out_dir) config.out_dir = *options.out_dir;
    if (options.seed) config.seed = *options.seed;
    if (options.replicates < 1) throw ConfigError("replicates", 0, "must be >= 1");
    if (options.replicates > 1 && config.mode != RunMode::dsmc && config.mode != RunMode::rescaled_dsmc &&
        config.mode != RunMode::stability) {
      throw ConfigError("replicates", 0, "replicates apply to the particle modes only");
    }
    validate(config);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_config;
  }

  const fs::path dir(config.out_dir);
  json summary;
  summary["version"] = DBOLTZ_VERSION;
  summary["mode"] = std::string(to_string(config.mode));
  summary["config"] = to_config_text(config);
  summary["status"] = "ok";
  const auto start = std::chrono::steady_clock::now();
  int code = exit_ok;
  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    switch (config.mode) {
      case RunMode::steady: code = run_steady(config, options, dir, summary, log); break;
      case RunMode::transient: code = run_transient_mode(config, options, dir, summary, log); break;
      case RunMode::dsmc: code = run_particles(config, options, dir, summary, false); break;
      case RunMode::rescaled_dsmc: code = run_particles(config, options, dir, summary, true); break;
      case RunMode::stability: code = run_stability(config, options, dir, summary); break;
      case RunMode::checks: code = run_checks_mode(config, options, summary, log); break;
    }
    if (code == exit_checks_failed) summary["status"] = "checks-failed";
  } catch (const NumericalBlowup& e) {
    log << "blowup: " << e.what() << '\n';
    summary["status"] = "blowup";
    summary["n_steps"] = e.step();
    code = exit_blowup;
  } catch (const IoError& e) {
    log << "io error: " << e.what() << '\n';
    return exit_io;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const InvalidArgument& e) {
    // Includes BudgetExceeded: the configuration asks for something invalid.
    log << "config error: " << e.what() << '\n';
    return exit_config;
  }
  summary["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_json((dir / "summary.json").string(), summary);
  } catch (const IoError& e) {
    log << "io error: " << e.what() << '\n';
    return exit_io;
  }
  return code;
}

}  // namespace dboltz

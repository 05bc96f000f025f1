#include "dboltz/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dboltz/errors.hpp"
#include "dboltz/moments.hpp"

namespace dboltz {

namespace {

struct BadValue {
  std::string message;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_real(std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || std::isnan(x)) throw BadValue{"expected a real number, got '" + s + "'"};
  return x;
}

template <typename Int>
Int to_integer(std::string_view v) {
  Int x{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    // Accept integral values written in floating notation, e.g. 1e5.
    double r = 0.0;
    try {
      r = to_real(v);
    } catch (const BadValue&) {
      throw BadValue{"expected an integer, got '" + std::string(v) + "'"};
    }
    if (r != std::floor(r) || std::abs(r) > 9.0e15) throw BadValue{"expected an integer, got '" + std::string(v) + "'"};
    if (r < 0.0 && std::is_unsigned_v<Int>) throw BadValue{"expected a non-negative integer, got '" + std::string(v) + "'"};
    return static_cast<Int>(r);
  }
  return x;
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw BadValue{"expected true or false, got '" + std::string(v) + "'"};
}

std::vector<double> to_reals(std::string_view v) {
  std::vector<double> out;
  while (true) {
    const auto comma = v.find(',');
    out.push_back(to_real(trim(v.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

RunMode to_mode(std::string_view v) {
  for (const RunMode m : {RunMode::steady, RunMode::transient, RunMode::dsmc, RunMode::rescaled_dsmc,
                          RunMode::stability, RunMode::checks}) {
    if (v == to_string(m)) return m;
  }
  throw BadValue{"unknown mode '" + std::string(v) +
                 "' (steady, transient, dsmc, rescaled-dsmc, stability, checks)"};
}

InitialPreset to_preset(std::string_view v) {
  for (const InitialPreset p : {InitialPreset::uniform_box, InitialPreset::gaussian, InitialPreset::m1,
                                InitialPreset::file}) {
    if (v == to_string(p)) return p;
  }
  throw BadValue{"unknown preset '" + std::string(v) + "' (uniform-box, gaussian, m1, file)"};
}

struct Key {
  std::string section;
  std::string name;
  std::function<void(RunConfig&, std::string_view)> set;
  /// Empty optional: key omitted from the canonical text.
  std::function<std::optional<std::string>(const RunConfig&)> get;
};

template <typename T>
std::string show(const T& v) {
  if constexpr (std::is_same_v<T, double>) return format_real(v);
  else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
  else if constexpr (std::is_same_v<T, std::string>) return v;
  else return std::to_string(v);
}

template <typename T>
T parse_as(std::string_view v) {
  if constexpr (std::is_same_v<T, double>) return to_real(v);
  else if constexpr (std::is_same_v<T, bool>) return to_bool(v);
  else if constexpr (std::is_same_v<T, std::string>) return std::string(v);
  else return to_integer<T>(v);
}

template <typename T>
Key field(std::string section, std::string name, T RunConfig::*member) {
  return Key{std::move(section), std::move(name),
             [member](RunConfig& c, std::string_view v) { c.*member = parse_as<T>(v); },
             [member](const RunConfig& c) -> std::optional<std::string> { return show(c.*member); }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back({"run", "mode", [](RunConfig& c, std::string_view v) { c.mode = to_mode(v); },
                 [](const RunConfig& c) -> std::optional<std::string> { return std::string(to_string(c.mode)); }});
    k.push_back(field("run", "seed", &RunConfig::seed));
    k.push_back(field("run", "threads", &RunConfig::threads));
    k.push_back(field("model", "gamma", &RunConfig::gamma));
    k.push_back(field("model", "a", &RunConfig::a));
    k.push_back({"model", "c", [](RunConfig& c, std::string_view v) { c.c = to_real(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   if (!c.c) return std::nullopt;
                   return format_real(*c.c);
                 }});
    k.push_back(field("grid", "L", &RunConfig::half_width));
    k.push_back(field("grid", "N", &RunConfig::n_cells));
    k.push_back(field("grid", "k", &RunConfig::degree));
    k.push_back(field("grid", "quadrature", &RunConfig::quad_nodes));
    k.push_back(field("grid", "budget_mb", &RunConfig::budget_mb));
    k.push_back(field("stopping", "threshold", &RunConfig::threshold));
    k.push_back(field("stopping", "max_steps", &RunConfig::max_steps));
    k.push_back(field("stopping", "t_end", &RunConfig::t_end));
    k.push_back(field("stopping", "cfl", &RunConfig::cfl));
    k.push_back(field("stopping", "record_interval", &RunConfig::record_interval));
    k.push_back({"initial", "preset", [](RunConfig& c, std::string_view v) { c.preset = to_preset(v); },
                 [](const RunConfig& c) -> std::optional<std::string> { return std::string(to_string(c.preset)); }});
    k.push_back(field("initial", "width", &RunConfig::width));
    k.push_back(field("initial", "sigma", &RunConfig::sigma));
    k.push_back({"initial", "file", [](RunConfig& c, std::string_view v) { c.file = std::string(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   if (c.file.empty()) return std::nullopt;
                   return c.file;
                 }});
    k.push_back(field("dsmc", "particles", &RunConfig::particles));
    k.push_back(field("dsmc", "dt", &RunConfig::dt));
    k.push_back(field("dsmc", "n_records", &RunConfig::n_records));
    k.push_back(field("dsmc", "log_spacing", &RunConfig::log_spacing));
    k.push_back(field("dsmc", "stratified", &RunConfig::stratified));
    k.push_back(field("dsmc", "majorant_refresh", &RunConfig::majorant_refresh));
    k.push_back(field("stability", "d0", &RunConfig::d0));
    k.push_back(field("checks", "samples", &RunConfig::check_samples));
    k.push_back(field("checks", "povzner_measures", &RunConfig::povzner_measures));
    k.push_back({"output", "dir", [](RunConfig& c, std::string_view v) { c.out_dir = std::string(v); },
                 [](const RunConfig& c) -> std::optional<std::string> { return c.out_dir; }});
    k.push_back({"output", "orders", [](RunConfig& c, std::string_view v) { c.orders = to_reals(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   std::string s;
                   for (std::size_t i = 0; i < c.orders.size(); ++i) {
                     if (i) s += ", ";
                     s += format_real(c.orders[i]);
                   }
                   return s;
                 }});
    return k;
  }();
  return table;
}

using LineMap = std::map<std::string, int>;

void check(bool ok, const char* key, const LineMap& lines, const std::string& message) {
  if (ok) return;
  const auto it = lines.find(key);
  throw ConfigError(key, it == lines.end() ? 0 : it->second, message);
}

void validate_with_lines(const RunConfig& c, const LineMap& lines) {
  check(std::isfinite(c.gamma) && c.gamma >= 0.0, "gamma", lines, "gamma must be finite and >= 0");
  check(c.a > 0.0 && c.a < 1.0, "a", lines, "a ∈ (0,1) required");
  if (c.c) {
    check(std::isfinite(*c.c) && *c.c >= 0.0, "c", lines, "c must be finite and >= 0");
    check(*c.c > 0.0 || c.mode == RunMode::transient, "c", lines,
          "c = 0 (unscaled equation) is only meaningful in transient mode");
  }
  check(c.threads >= 1, "threads", lines, "threads must be >= 1");
  check(std::isfinite(c.half_width) && c.half_width > 0.0, "L", lines, "L must be > 0");
  check(c.n_cells >= 1, "N", lines, "N must be >= 1");
  check(c.degree >= 0 && c.degree <= 8, "k", lines, "k must be in [0, 8]");
  check(c.quad_nodes >= 0 && c.quad_nodes <= 64, "quadrature", lines, "quadrature must be in [0, 64] (0 = default)");
  check(c.budget_mb > 0.0, "budget_mb", lines, "budget_mb must be > 0");
  check(c.threshold > 0.0, "threshold", lines, "threshold must be > 0");
  check(c.max_steps >= 1, "max_steps", lines, "max_steps must be >= 1");
  check(std::isfinite(c.t_end) && c.t_end >= 0.0, "t_end", lines, "t_end must be finite and >= 0");
  check(c.cfl > 0.0 && c.cfl <= 1.0, "cfl", lines, "cfl must lie in (0, 1]");
  check(c.record_interval >= 1, "record_interval", lines, "record_interval must be >= 1");
  check(std::isfinite(c.width) && c.width > 0.0, "width", lines, "width must be > 0");
  check(std::isfinite(c.sigma) && c.sigma > 0.0, "sigma", lines, "sigma must be > 0");
  if (c.preset == InitialPreset::file) {
    check(!c.file.empty(), "file", lines, "preset 'file' needs an initial.file path");
    check(std::filesystem::is_regular_file(c.file), "file", lines, "file '" + c.file + "' does not exist");
  }
  check(c.particles >= 2, "particles", lines, "particles must be >= 2");
  check(std::isfinite(c.dt) && c.dt > 0.0, "dt", lines, "dt must be > 0");
  check(c.n_records >= 1, "n_records", lines, "n_records must be >= 1");
  check(c.majorant_refresh >= 1, "majorant_refresh", lines, "majorant_refresh must be >= 1");
  check(std::isfinite(c.d0) && c.d0 > 0.0, "d0", lines, "d0 must be > 0");
  check(c.check_samples >= 1, "samples", lines, "samples must be >= 1");
  check(c.povzner_measures >= 1, "povzner_measures", lines, "povzner_measures must be >= 1");
  check(!c.out_dir.empty(), "dir", lines, "output dir must not be empty");
  check(!c.orders.empty(), "orders", lines, "orders must not be empty");
  for (const double p : c.orders) {
    check(std::isfinite(p) && p >= 0.0, "orders", lines, "moment orders must be finite and >= 0");
  }
  for (std::size_t i = 1; i < c.orders.size(); ++i) {
    check(c.orders[i] > c.orders[i - 1], "orders", lines, "orders must be strictly increasing");
  }
}

}  // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::steady: return "steady";
    case RunMode::transient: return "transient";
    case RunMode::dsmc: return "dsmc";
    case RunMode::rescaled_dsmc: return "rescaled-dsmc";
    case RunMode::stability: return "stability";
    case RunMode::checks: return "checks";
  }
  return "?";
}

std::string_view to_string(InitialPreset preset) {
  switch (preset) {
    case InitialPreset::uniform_box: return "uniform-box";
    case InitialPreset::gaussian: return "gaussian";
    case InitialPreset::m1: return "m1";
    case InitialPreset::file: return "file";
  }
  return "?";
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ModelParams RunConfig::params() const {
  if (c && *c == 0.0) return ModelParams::make(gamma, a).with_drift(0.0);
  return ModelParams::make(gamma, a, c);
}

void validate(const RunConfig& config) { validate_with_lines(config, {}); }

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  LineMap lines;
  std::string section;
  int line_no = 0;
  bool saw_mode = false;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      const bool known = std::any_of(keys().begin(), keys().end(), [&](const Key& k) { return k.section == section; });
      if (!known) throw ConfigError(section, line_no, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected key = value");
    const std::string name(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (name.empty()) throw ConfigError("", line_no, "missing key before '='");

    const auto it = std::find_if(keys().begin(), keys().end(), [&](const Key& k) {
      return k.name == name && (section.empty() || k.section == section);
    });
    if (it == keys().end()) {
      throw ConfigError(name, line_no,
                        section.empty() ? "unknown key" : "unknown key in section [" + section + "]");
    }
    if (lines.contains(name)) {
      throw ConfigError(name, line_no, "repeated key (first set on line " + std::to_string(lines[name]) + ")");
    }
    lines[name] = line_no;
    if (name == "mode") saw_mode = true;
    try {
      it->set(config, value);
    } catch (const BadValue& e) {
      throw ConfigError(name, line_no, e.message);
    }
  }
  if (!saw_mode) throw ConfigError("mode", 0, "missing required key");
  validate_with_lines(config, lines);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_config_text(const RunConfig& config) {
  std::string out;
  std::string section;
  for (const Key& k : keys()) {
    const auto value = k.get(config);
    if (!value) continue;
    if (k.section != section) {
      if (!section.empty()) out += '\n';
      section = k.section;
      out += "[" + section + "]\n";
    }
    out += k.name + " = " + *value + "\n";
  }
  return out;
}

}  // namespace dboltz

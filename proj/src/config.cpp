#include "ddent/config.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

#include "ddent/errors.hpp"

namespace ddent {

namespace {

using Entry = std::pair<std::string, std::string>;

struct Section {
  std::vector<Entry> entries;
  std::vector<int> lines;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& value, int line) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" + value + "'");
  }
  return out;
}

long to_int(const std::string& key, const std::string& value, int line) {
  long out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects an integer, got '" + value + "'");
  }
  return out;
}

struct GridKeys {
  double t_min = 0.0;
  double t_max = 10.0;
  long points = 400;
};

void apply(ScenarioConfig& cfg, GridKeys& grid, const std::string& key, const std::string& value, int line) {
  auto num = [&] { return to_double(key, value, line); };
  auto noise = [&]() -> NoiseSpectrum& {
    if (!cfg.noise) cfg.noise = NoiseSpectrum{};
    return *cfg.noise;
  };
  if (key == "name") {
    cfg.name = value;
  } else if (key == "g") {
    cfg.bath.g = num();
  } else if (key == "ohmicity") {
    cfg.bath.ohmicity = num();
  } else if (key == "omega_c") {
    cfg.bath.omega_c = num();
  } else if (key == "A0") {
    noise().A0 = num();
  } else if (key == "noise_a") {
    noise().a = num();
  } else if (key == "omega_ir") {
    auto& n = noise();
    const bool default_uv = n.omega_uv == kDefaultUvOverIr * n.omega_ir;
    n.omega_ir = num();
    if (default_uv) n.omega_uv = kDefaultUvOverIr * n.omega_ir;
  } else if (key == "omega_uv") {
    noise().omega_uv = num();
  } else if (key == "beta") {
    cfg.beta = num();
  } else if (key == "omega0") {
    cfg.omega0 = num();
  } else if (key == "lambda0") {
    cfg.lambda0 = num();
  } else if (key == "mode") {
    cfg.mode = parse_dynamics_mode(value);
  } else if (key == "sequence") {
    cfg.sequence.kind = parse_sequence_kind(value);
  } else if (key == "n") {
    const long n = to_int(key, value, line);
    if (n < 0) throw ConfigError("line " + std::to_string(line) + ": n must be non-negative");
    cfg.sequence.n = static_cast<int>(n);
  } else if (key == "alpha") {
    cfg.sequence.alpha = num();
  } else if (key == "custom_times") {
    cfg.sequence.custom_fractions.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.sequence.custom_fractions.push_back(to_double(key, trim(item), line));
  } else if (key == "t_min") {
    grid.t_min = num();
  } else if (key == "t_max") {
    grid.t_max = num();
  } else if (key == "points") {
    grid.points = to_int(key, value, line);
  } else if (key == "rel_tol") {
    cfg.quad.rel_tol = num();
  } else if (key == "abs_tol") {
    cfg.quad.abs_tol = num();
  } else if (key == "omega_max_factor") {
    cfg.quad.omega_max_factor = num();
  } else if (key == "max_panels") {
    const long m = to_int(key, value, line);
    if (m < 1) throw ConfigError("line " + std::to_string(line) + ": max_panels must be positive");
    cfg.quad.max_panels = static_cast<std::size_t>(m);
  } else {
    throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
  }
}

ScenarioConfig build(const Section& defaults, const Section* curve, std::size_t index) {
  ScenarioConfig cfg;
  cfg.name = "curve" + std::to_string(index + 1);
  GridKeys grid;
  for (std::size_t i = 0; i < defaults.entries.size(); ++i) {
    apply(cfg, grid, defaults.entries[i].first, defaults.entries[i].second, defaults.lines[i]);
  }
  if (curve) {
    for (std::size_t i = 0; i < curve->entries.size(); ++i) {
      apply(cfg, grid, curve->entries[i].first, curve->entries[i].second, curve->lines[i]);
    }
  }
  if (grid.points < 1) throw ConfigError("points must be at least 1");
  if (!(grid.t_max >= grid.t_min) || grid.t_min < 0.0) throw ConfigError("time grid needs 0 <= t_min <= t_max");
  cfg.time_grid = linspace(grid.t_min, grid.t_max, static_cast<std::size_t>(grid.points));
  if (cfg.mode == DynamicsMode::WithInteractionNoise && !cfg.noise) cfg.noise = NoiseSpectrum{};
  cfg.validate();
  return cfg;
}

}  // namespace

std::vector<ScenarioConfig> parse_config(std::istream& in) {
  Section defaults;
  std::vector<Section> curves;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text != "[curve]") throw ConfigError("line " + std::to_string(line) + ": unknown section " + text);
      curves.emplace_back();
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key or value");
    Section& target = curves.empty() ? defaults : curves.back();
    target.entries.emplace_back(key, value);
    target.lines.push_back(line);
  }
  std::vector<ScenarioConfig> out;
  if (curves.empty()) {
    out.push_back(build(defaults, nullptr, 0));
  } else {
    for (std::size_t i = 0; i < curves.size(); ++i) out.push_back(build(defaults, &curves[i], i));
  }
  return out;
}

std::vector<ScenarioConfig> parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::vector<ScenarioConfig> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

void write_config(std::ostream& os, const ScenarioConfig& cfg) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(17);
  os << "name = " << cfg.name << '\n';
  os << "mode = " << to_string(cfg.mode) << '\n';
  os << "g = " << cfg.bath.g << '\n';
  os << "ohmicity = " << cfg.bath.ohmicity << '\n';
  os << "omega_c = " << cfg.bath.omega_c << '\n';
  os << "beta = " << cfg.beta << '\n';
  os << "omega0 = " << cfg.omega0 << '\n';
  os << "lambda0 = " << cfg.lambda0 << '\n';
  if (cfg.noise) {
    os << "A0 = " << cfg.noise->A0 << '\n';
    os << "noise_a = " << cfg.noise->a << '\n';
    os << "omega_ir = " << cfg.noise->omega_ir << '\n';
    os << "omega_uv = " << cfg.noise->omega_uv << '\n';
  }
  os << "sequence = " << to_string(cfg.sequence.kind) << '\n';
  os << "n = " << cfg.sequence.n << '\n';
  os << "alpha = " << cfg.sequence.alpha << '\n';
  if (!cfg.sequence.custom_fractions.empty()) {
    os << "custom_times = ";
    for (std::size_t i = 0; i < cfg.sequence.custom_fractions.size(); ++i) {
      os << (i ? "," : "") << cfg.sequence.custom_fractions[i];
    }
    os << '\n';
  }
  if (!cfg.time_grid.empty()) {
    os << "t_min = " << cfg.time_grid.front() << '\n';
    os << "t_max = " << cfg.time_grid.back() << '\n';
    os << "points = " << cfg.time_grid.size() << '\n';
  }
  os << "rel_tol = " << cfg.quad.rel_tol << '\n';
  os << "abs_tol = " << cfg.quad.abs_tol << '\n';
  os << "omega_max_factor = " << cfg.quad.omega_max_factor << '\n';
  os << "max_panels = " << cfg.quad.max_panels << '\n';
  os.flags(flags);
  os.precision(precision);
}

}  // namespace ddent

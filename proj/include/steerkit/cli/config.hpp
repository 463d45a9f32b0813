#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "steerkit/errors.hpp"
#include "steerkit/params.hpp"
#include "steerkit/sweep.hpp"

namespace steerkit::cli {

inline constexpr int kSchemaVersion = 1;

/// Rejected configuration text; maps to exit code 2.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "config line " + std::to_string(line) + ": " + what : "config: " + what) {}
};

enum class InitialState { vacuum_thermal, vacuum, steady };

struct EvolveBlock {
  double t_max = 60.0;
  int n_points = 601;
  InitialState initial = InitialState::vacuum_thermal;
};

struct SpectraBlock {
  std::optional<double> omega_min;
  std::optional<double> omega_max;
  int n_points = 2001;
};

struct SweepBlock {
  SweepSpec spec;
  std::optional<SweptAxis> swept;
  double refine_step = 1e-4;
};

struct ScenarioConfig {
  SystemParams params;
  double rwa_margin_factor = 10.0;
  std::optional<EvolveBlock> evolve;
  std::optional<SpectraBlock> spectra;
  std::optional<SweepBlock> sweep;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(line, "'" + std::string(key) + "' expects a finite number, got '" +
                                std::string(text) + "'");
  }
  return v;
}

inline int parse_int(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError(line, "'" + std::string(key) + "' expects an integer, got '" +
                                std::string(text) + "'");
  }
  return v;
}

inline bool parse_bool(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(line, "'" + std::string(key) + "' expects true/false");
}

/// "min, max, steps"
inline std::tuple<double, double, int> parse_range(std::string_view text, int line,
                                                   std::string_view key) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) throw ConfigError(line, "'" + std::string(key) + "' expects 'min, max, steps'");
  return {parse_double(parts[0], line, key), parse_double(parts[1], line, key),
          parse_int(parts[2], line, key)};
}

}  // namespace detail

/// Parses the INI-like scenario format:
///
///   schema = 1
///   [params]   kappa1 kappa2 g1 g2 gamma_m n_th
///   [rwa]      omega_m margin_factor
///   [evolve]   t_max n_points initial (vacuum-thermal | vacuum | steady)
///   [spectra]  omega_min omega_max n_points
///   [sweep]    objective, free.<param> = min, max, steps, swept.<param> = min, max, steps,
///              require_stable, equal_losses, g2_above_g1, refine_step
///
/// '#' starts a comment. Unknown sections or keys, duplicates, and more than
/// one of the evolve/spectra/sweep blocks are rejected.
inline ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string section;
  std::set<std::string> seen_keys;
  std::set<std::string> run_blocks;
  std::optional<int> schema;
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (section == "evolve" || section == "spectra" || section == "sweep") {
        if (!run_blocks.insert(section).second) throw ConfigError(line_no, "duplicate [" + section + "]");
        if (run_blocks.size() > 1) throw ConfigError(line_no, "only one run block per config");
        if (section == "evolve") cfg.evolve.emplace();
        if (section == "spectra") cfg.spectra.emplace();
        if (section == "sweep") cfg.sweep.emplace();
      } else if (section != "params" && section != "rwa") {
        throw ConfigError(line_no, "unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    if (!seen_keys.insert(section + "." + key).second) {
      throw ConfigError(line_no, "duplicate key '" + key + "'");
    }
    auto number = [&] { return detail::parse_double(value, line_no, key); };

    if (section.empty()) {
      if (key != "schema") throw ConfigError(line_no, "unknown top-level key '" + key + "'");
      schema = detail::parse_int(value, line_no, key);
      if (*schema != kSchemaVersion) {
        throw ConfigError(line_no, "unsupported schema version " + std::string(value));
      }
    } else if (section == "params") {
      const auto p = parse_param(key);
      if (!p) throw ConfigError(line_no, "unknown parameter '" + key + "'");
      const double v = number();
      if (v < 0.0) throw ConfigError(line_no, "'" + key + "' must be >= 0");
      set(cfg.params, *p, v);
    } else if (section == "rwa") {
      if (key == "omega_m") {
        cfg.params.omega_m = number();
      } else if (key == "margin_factor") {
        cfg.rwa_margin_factor = number();
        if (!(cfg.rwa_margin_factor > 1.0)) throw ConfigError(line_no, "margin_factor must be > 1");
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "' in [rwa]");
      }
    } else if (section == "evolve") {
      EvolveBlock& e = *cfg.evolve;
      if (key == "t_max") {
        e.t_max = number();
      } else if (key == "n_points") {
        e.n_points = detail::parse_int(value, line_no, key);
      } else if (key == "initial") {
        if (value == "vacuum-thermal") e.initial = InitialState::vacuum_thermal;
        else if (value == "vacuum") e.initial = InitialState::vacuum;
        else if (value == "steady") e.initial = InitialState::steady;
        else throw ConfigError(line_no, "initial must be vacuum-thermal, vacuum or steady");
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "' in [evolve]");
      }
    } else if (section == "spectra") {
      SpectraBlock& s = *cfg.spectra;
      if (key == "omega_min") s.omega_min = number();
      else if (key == "omega_max") s.omega_max = number();
      else if (key == "n_points") s.n_points = detail::parse_int(value, line_no, key);
      else throw ConfigError(line_no, "unknown key '" + key + "' in [spectra]");
    } else if (section == "sweep") {
      SweepBlock& s = *cfg.sweep;
      if (key == "objective") {
        const auto o = parse_objective(value);
        if (!o) throw ConfigError(line_no, "objective must be S12, S21 or EN");
        s.spec.objective = *o;
      } else if (key == "require_stable") {
        s.spec.require_stable = detail::parse_bool(value, line_no, key);
      } else if (key == "equal_losses") {
        s.spec.equal_losses = detail::parse_bool(value, line_no, key);
      } else if (key == "g2_above_g1") {
        s.spec.g2_above_g1 = detail::parse_bool(value, line_no, key);
      } else if (key == "refine_step") {
        s.refine_step = number();
        if (!(s.refine_step > 0.0)) throw ConfigError(line_no, "refine_step must be > 0");
      } else if (key.starts_with("free.") || key.starts_with("swept.")) {
        const bool free = key.starts_with("free.");
        const auto name = std::string_view(key).substr(free ? 5 : 6);
        const auto p = parse_param(name);
        if (!p) throw ConfigError(line_no, "unknown parameter '" + std::string(name) + "'");
        const auto [lo, hi, steps] = detail::parse_range(value, line_no, key);
        if (free) {
          s.spec.free_params.push_back({*p, lo, hi, steps});
        } else {
          if (s.swept) throw ConfigError(line_no, "only one swept parameter allowed");
          if (steps < 1 || lo > hi) throw ConfigError(line_no, "bad swept range");
          SweptAxis axis{*p, {}};
          for (int k = 0; k < steps; ++k) {
            axis.values.push_back(steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1.0));
          }
          s.swept = axis;
        }
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "' in [sweep]");
      }
    }
  }

  if (!schema) throw ConfigError(0, "missing 'schema = 1'");
  try {
    validate(cfg.params);
  } catch (const InvalidParams& e) {
    throw ConfigError(0, e.what());
  }
  if (cfg.evolve) {
    if (!(cfg.evolve->t_max >= 0.0)) throw ConfigError(0, "t_max must be >= 0");
    if (cfg.evolve->n_points < 1) throw ConfigError(0, "evolve n_points must be >= 1");
    if (cfg.evolve->n_points > 1 && !(cfg.evolve->t_max > 0.0)) {
      throw ConfigError(0, "t_max must be > 0 for more than one point");
    }
  }
  if (cfg.spectra) {
    if (cfg.spectra->n_points < 1) throw ConfigError(0, "spectra n_points must be >= 1");
    if (cfg.spectra->omega_min.has_value() != cfg.spectra->omega_max.has_value()) {
      throw ConfigError(0, "omega_min and omega_max go together");
    }
    if (cfg.spectra->omega_min && !(*cfg.spectra->omega_min <= *cfg.spectra->omega_max)) {
      throw ConfigError(0, "omega_min must be <= omega_max");
    }
  }
  if (cfg.sweep) {
    cfg.sweep->spec.fixed = cfg.params;
    try {
      validate(cfg.sweep->spec);
    } catch (const InvalidParams& e) {
      throw ConfigError(0, e.what());
    }
  }
  return cfg;
}

inline ScenarioConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace steerkit::cli

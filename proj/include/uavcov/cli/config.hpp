#ifndef UAVCOV_CLI_CONFIG_HPP
#define UAVCOV_CLI_CONFIG_HPP

#include <uavcov/closed_form.hpp>
#include <uavcov/error.hpp>
#include <uavcov/geometry.hpp>
#include <uavcov/monte_carlo.hpp>
#include <uavcov/oracle.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace uavcov::cli {

/// Flat dotted-key settings, e.g. {"scenario.alpha_deg": "13"}.
using KeyValues = std::map<std::string, std::string>;

struct RunConfig {
  CorridorScenario scenario{};
  std::optional<double> alpha_deg;
  std::optional<double> beta_deg;
  OracleAssumptions assumptions{};
  LosMode los_mode = LosMode::Expectation;
  Case1Wedge case1_wedge = Case1Wedge::Include;

  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t mc_seed = 1;
  std::size_t workers = 0;

  std::optional<std::size_t> grid_nx;  // oracle default 2001, heatmap default 500
  std::optional<std::size_t> grid_nz;  // oracle default 2001, heatmap default 300

  double sweep_lo_deg = 2.0;
  double sweep_hi_deg = 38.0;
  double sweep_step_deg = 1.0;
  std::string sweep_evaluator = "closed_form";

  double optimize_lo_deg = 2.0;
  double optimize_hi_deg = 38.0;
  double optimize_tol_deg = 0.01;
  std::string optimize_evaluator = "closed_form";

  std::vector<double> validate_alphas_deg{8.0, 13.0, 17.0, 25.0};
  double validate_tolerance = 0.02;
  std::size_t validate_grid = 2001;

  std::string output_path;  // empty = stdout (heatmap: "heatmap")
  std::string output_format;  // empty = subcommand default (sweep: csv, others: json)
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a number, got '" + v + "'");
}

inline std::uint64_t to_count(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] != '-') {
      // accept 1e6 style as well as plain integers
      const double d = std::stod(v, &used);
      if (used == v.size() && d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
}

inline bool to_bool(const std::string& key, const std::string& v) {
  const std::string l = lower(v);
  if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
  if (l == "false" || l == "0" || l == "no" || l == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

inline std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  if (out.empty()) throw ConfigError(key + ": expected a comma-separated list of numbers");
  return out;
}

template <class T>
T to_choice(const std::string& key, const std::string& v, const std::vector<std::pair<std::string, T>>& options) {
  const std::string l = lower(v);
  std::string names;
  for (const auto& [n, val] : options) {
    if (n == l) return val;
    names += (names.empty() ? "" : "|") + n;
  }
  throw ConfigError(key + ": expected one of {" + names + "}, got '" + v + "'");
}

inline void flatten_json(const nlohmann::json& j, const std::string& prefix, KeyValues& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  if (prefix.empty()) throw ConfigError("JSON config must be an object");
  if (j.is_array()) {
    std::string joined;
    for (const auto& e : j) {
      if (!e.is_number()) throw ConfigError(prefix + ": arrays must contain numbers");
      joined += (joined.empty() ? "" : ",") + e.dump();
    }
    out[prefix] = joined;
  } else if (j.is_string()) {
    out[prefix] = j.get<std::string>();
  } else if (j.is_null()) {
    throw ConfigError(prefix + ": null is not a valid value");
  } else {
    out[prefix] = j.dump();
  }
}

}  // namespace detail

/// Parses `key = value` lines (`#` comments, blank lines ignored) or a JSON object.
inline KeyValues parse_config_text(const std::string& text) {
  KeyValues kv;
  const std::string t = detail::trim(text);
  if (!t.empty() && t.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    detail::flatten_json(j, "", kv);
    return kv;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    kv[key] = detail::trim(line.substr(eq + 1));
  }
  return kv;
}

inline KeyValues read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

/// Builds a RunConfig from defaults, then `file`, then `overrides` (later wins).
inline RunConfig parse_config(const KeyValues& file, const KeyValues& overrides = {}) {
  KeyValues kv = file;
  for (const auto& [k, v] : overrides) kv[k] = v;

  using detail::to_bool;
  using detail::to_choice;
  using detail::to_count;
  using detail::to_double;
  RunConfig c;
  CorridorScenario& s = c.scenario;
  AirToGround a2g{};
  bool a2g_touched = false;
  std::string pathloss = "fspl";

  for (const auto& [key, v] : kv) {
    if (key == "scenario.d1") s.d1 = to_double(key, v);
    else if (key == "scenario.h1") s.h1 = to_double(key, v);
    else if (key == "scenario.h2") s.h2 = to_double(key, v);
    else if (key == "scenario.alpha_deg") c.alpha_deg = to_double(key, v);
    else if (key == "scenario.beta_deg") c.beta_deg = to_double(key, v);
    else if (key == "scenario.tau_db") s.tau = db_to_linear(to_double(key, v));
    else if (key == "radio.p_tx_dbm") s.radio.p_tx_dbm = to_double(key, v);
    else if (key == "radio.carrier_hz") s.radio.carrier_hz = to_double(key, v);
    else if (key == "radio.bandwidth_hz") s.radio.bandwidth_hz = to_double(key, v);
    else if (key == "radio.noise_figure_db") s.radio.noise_figure_db = to_double(key, v);
    else if (key == "radio.thermal_noise_dbm_hz") s.radio.thermal_noise_dbm_hz = to_double(key, v);
    else if (key == "model.assoc")
      c.assumptions.association =
          to_choice<Association>(key, v, {{"strongest", Association::Strongest}, {"nearest", Association::Nearest}});
    else if (key == "model.beam")
      c.assumptions.beam.kind = to_choice<BeamShape::Kind>(
          key, v, {{"rect", BeamShape::Kind::Rectangular}, {"cosine", BeamShape::Kind::Cosine}});
    else if (key == "model.nt") {
      const auto n = to_count(key, v);
      if (n < 2 || n > 4096) throw ConfigError(key + ": element count must be in [2, 4096]");
      c.assumptions.beam.n_t = static_cast<int>(n);
    } else if (key == "model.g_max_db") c.assumptions.beam.g_max_db = to_double(key, v);
    else if (key == "model.pathloss") pathloss = to_choice<std::string>(key, v, {{"fspl", "fspl"}, {"a2g", "a2g"}});
    else if (key == "model.interference")
      c.assumptions.interference = to_choice<InterferenceMode>(
          key, v, {{"dominant", InterferenceMode::DominantOnly}, {"sum", InterferenceMode::SumAll}});
    else if (key == "model.noise") c.assumptions.include_noise = to_bool(key, v);
    else if (key == "model.bs_positions") c.assumptions.bs_positions = detail::to_list(key, v);
    else if (key == "model.case1_wedge")
      c.case1_wedge = to_choice<Case1Wedge>(key, v, {{"include", Case1Wedge::Include}, {"expression", Case1Wedge::ExpressionOnly}});
    else if (key == "a2g.a") a2g.a = to_double(key, v), a2g_touched = true;
    else if (key == "a2g.b") a2g.b = to_double(key, v), a2g_touched = true;
    else if (key == "a2g.eta_los_db") a2g.eta_los_db = to_double(key, v), a2g_touched = true;
    else if (key == "a2g.eta_nlos_db") a2g.eta_nlos_db = to_double(key, v), a2g_touched = true;
    else if (key == "a2g.los_mode")
      c.los_mode = to_choice<LosMode>(key, v, {{"expectation", LosMode::Expectation}, {"bernoulli", LosMode::Bernoulli}});
    else if (key == "mc.samples") c.mc_samples = to_count(key, v);
    else if (key == "mc.seed") c.mc_seed = to_count(key, v);
    else if (key == "mc.workers") c.workers = static_cast<std::size_t>(to_count(key, v));
    else if (key == "grid.nx") c.grid_nx = static_cast<std::size_t>(to_count(key, v));
    else if (key == "grid.nz") c.grid_nz = static_cast<std::size_t>(to_count(key, v));
    else if (key == "sweep.alpha_min_deg") c.sweep_lo_deg = to_double(key, v);
    else if (key == "sweep.alpha_max_deg") c.sweep_hi_deg = to_double(key, v);
    else if (key == "sweep.alpha_step_deg") c.sweep_step_deg = to_double(key, v);
    else if (key == "sweep.evaluator")
      c.sweep_evaluator = to_choice<std::string>(
          key, v, {{"closed_form", "closed_form"}, {"quadrature", "quadrature"}, {"monte_carlo", "monte_carlo"}});
    else if (key == "optimize.alpha_min_deg") c.optimize_lo_deg = to_double(key, v);
    else if (key == "optimize.alpha_max_deg") c.optimize_hi_deg = to_double(key, v);
    else if (key == "optimize.tol_deg") c.optimize_tol_deg = to_double(key, v);
    else if (key == "optimize.evaluator")
      c.optimize_evaluator = to_choice<std::string>(
          key, v, {{"closed_form", "closed_form"}, {"quadrature", "quadrature"}, {"monte_carlo", "monte_carlo"}});
    else if (key == "validate.alphas_deg") c.validate_alphas_deg = detail::to_list(key, v);
    else if (key == "validate.tolerance") c.validate_tolerance = to_double(key, v);
    else if (key == "validate.grid") c.validate_grid = static_cast<std::size_t>(to_count(key, v));
    else if (key == "output.path") c.output_path = v;
    else if (key == "output.format")
      c.output_format = to_choice<std::string>(key, v, {{"json", "json"}, {"csv", "csv"}});
    else throw ConfigError("unknown configuration key '" + key + "'");
  }

  if (pathloss == "a2g") c.assumptions.pathloss = a2g;
  else if (a2g_touched) throw ConfigError("a2g.*: parameters given but model.pathloss is not a2g");

  if (c.alpha_deg) s.alpha = deg_to_rad(*c.alpha_deg);
  if (c.beta_deg) s.beta = deg_to_rad(*c.beta_deg);
  if (!(c.optimize_tol_deg > 0.0)) throw ConfigError("optimize.tol_deg: must be positive");
  if (!(c.sweep_step_deg > 0.0)) throw ConfigError("sweep.alpha_step_deg: must be positive");
  if (c.mc_samples < 1) throw ConfigError("mc.samples: must be at least 1");
  return c;
}

/// Resolved settings as a JSON object keyed like the config file.
inline nlohmann::json config_to_json(const RunConfig& c) {
  const CorridorScenario& s = c.scenario;
  const OracleAssumptions& a = c.assumptions;
  nlohmann::json j;
  j["scenario"] = {{"d1", s.d1}, {"h1", s.h1}, {"h2", s.h2}, {"tau_db", s.tau_db()}};
  if (c.alpha_deg) j["scenario"]["alpha_deg"] = *c.alpha_deg;
  if (c.beta_deg) j["scenario"]["beta_deg"] = *c.beta_deg;
  j["radio"] = {{"p_tx_dbm", s.radio.p_tx_dbm},
                {"carrier_hz", s.radio.carrier_hz},
                {"bandwidth_hz", s.radio.bandwidth_hz},
                {"noise_figure_db", s.radio.noise_figure_db},
                {"thermal_noise_dbm_hz", s.radio.thermal_noise_dbm_hz}};
  nlohmann::json m;
  m["assoc"] = a.association == Association::Strongest ? "strongest" : "nearest";
  m["beam"] = a.beam.kind == BeamShape::Kind::Rectangular ? "rect" : "cosine";
  if (a.beam.n_t) m["nt"] = *a.beam.n_t;
  if (a.beam.g_max_db) m["g_max_db"] = *a.beam.g_max_db;
  m["pathloss"] = std::holds_alternative<FreeSpace>(a.pathloss) ? "fspl" : "a2g";
  m["interference"] = a.interference == InterferenceMode::DominantOnly ? "dominant" : "sum";
  m["noise"] = a.include_noise;
  m["bs_positions"] = a.positions(s);
  m["case1_wedge"] = c.case1_wedge == Case1Wedge::Include ? "include" : "expression";
  j["model"] = m;
  if (const auto* g = std::get_if<AirToGround>(&a.pathloss)) {
    j["a2g"] = {{"a", g->a},
                {"b", g->b},
                {"eta_los_db", g->eta_los_db},
                {"eta_nlos_db", g->eta_nlos_db},
                {"los_mode", c.los_mode == LosMode::Expectation ? "expectation" : "bernoulli"}};
  }
  j["mc"] = {{"samples", c.mc_samples}, {"seed", c.mc_seed}};
  if (c.grid_nx) j["grid"]["nx"] = *c.grid_nx;
  if (c.grid_nz) j["grid"]["nz"] = *c.grid_nz;
  j["sweep"] = {{"alpha_min_deg", c.sweep_lo_deg},
                {"alpha_max_deg", c.sweep_hi_deg},
                {"alpha_step_deg", c.sweep_step_deg},
                {"evaluator", c.sweep_evaluator}};
  j["optimize"] = {{"alpha_min_deg", c.optimize_lo_deg},
                   {"alpha_max_deg", c.optimize_hi_deg},
                   {"tol_deg", c.optimize_tol_deg},
                   {"evaluator", c.optimize_evaluator}};
  j["validate"] = {{"alphas_deg", c.validate_alphas_deg}, {"tolerance", c.validate_tolerance}, {"grid", c.validate_grid}};
  return j;
}

}  // namespace uavcov::cli

#endif  // UAVCOV_CLI_CONFIG_HPP

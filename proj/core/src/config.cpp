// Copyright 2026 The spinweave Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "spinweave/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "spinweave/errors.hpp"

namespace spinweave {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(key, key + ": expected a finite number, got '" + v + "'");
  }
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError(key, key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

int parse_small_int(const std::string& key, const std::string& v) {
  const long long x = parse_int(key, v);
  if (x < -1000000 || x > 1000000) throw ConfigError(key, key + ": integer out of range");
  return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key, key + ": expected true or false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.empty()) throw ConfigError(key, key + ": expected a comma-separated list");
  return out;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::optional<std::string>(const RunConfig&)> get;  // nullopt: section absent
};

EnsembleSpec& ens(RunConfig& c) {
  if (!c.ensemble) c.ensemble = EnsembleSpec{};
  return *c.ensemble;
}
StateSpec& st(RunConfig& c) {
  if (!c.state) c.state = StateSpec{};
  return *c.state;
}

template <class F>
std::function<std::optional<std::string>(const RunConfig&)> always(F f) {
  return [f](const RunConfig& c) -> std::optional<std::string> { return f(c); };
}
template <class F>
std::function<std::optional<std::string>(const RunConfig&)> if_ensemble(F f) {
  return [f](const RunConfig& c) -> std::optional<std::string> {
    if (!c.ensemble) return std::nullopt;
    return f(*c.ensemble);
  };
}
template <class F>
std::function<std::optional<std::string>(const RunConfig&)> if_state(F f) {
  return [f](const RunConfig& c) -> std::optional<std::string> {
    if (!c.state) return std::nullopt;
    return f(*c.state);
  };
}

#define SW_DOUBLE(KEY, FIELD)                                                         \
  Key{KEY, [](RunConfig& c, const std::string& v) { c.FIELD = parse_double(KEY, v); }, \
      always([](const RunConfig& c) { return fmt(c.FIELD); })}
#define SW_INT(KEY, FIELD)                                                               \
  Key{KEY, [](RunConfig& c, const std::string& v) { c.FIELD = parse_small_int(KEY, v); }, \
      always([](const RunConfig& c) { return std::to_string(c.FIELD); })}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      SW_INT("system.n_donors", system.n_donors),
      SW_INT("system.n_mn", system.n_mn),
      Key{"system.exciton_electron",
          [](RunConfig& c, const std::string& v) {
            c.system.include_exciton_electron = parse_bool("system.exciton_electron", v);
          },
          always([](const RunConfig& c) {
            return std::string(c.system.include_exciton_electron ? "true" : "false");
          })},
      Key{"system.geometry",
          [](RunConfig& c, const std::string& v) {
            if (v == "voigt") c.system.geometry = Geometry::voigt;
            else if (v == "faraday") c.system.geometry = Geometry::faraday;
            else throw ConfigError("system.geometry", "system.geometry: expected voigt or faraday, got '" + v + "'");
          },
          always([](const RunConfig& c) { return to_string(c.system.geometry); })},
      SW_DOUBLE("system.B_T", system.b_tesla),
      SW_DOUBLE("system.T_K", system.temperature_k),
      SW_DOUBLE("system.g_mn", system.g_mn),
      Key{"system.g_electron",
          [](RunConfig& c, const std::string& v) {
            if (v == "auto") c.system.g_electron.reset();
            else c.system.g_electron = parse_double("system.g_electron", v);
          },
          always([](const RunConfig& c) {
            return c.system.g_electron ? fmt(*c.system.g_electron) : std::string("auto");
          })},
      SW_DOUBLE("system.Be_per_ion_T", system.be_per_ion_tesla),
      SW_DOUBLE("system.Be_donor_T", system.be_donor_tesla),
      SW_DOUBLE("system.delta_eh_meV", system.delta_eh_mev),
      SW_DOUBLE("system.exciton_energy_meV", system.exciton_energy_mev),
      SW_DOUBLE("system.pump_photon_meV", system.pump_photon_energy_mev),
      SW_DOUBLE("system.linewidth_meV", system.resonance_linewidth_mev),

      SW_DOUBLE("pulse.epsilon", pulse.epsilon),
      Key{"pulse.detection",
          [](RunConfig& c, const std::string& v) {
            if (v == "all") c.pulse.detection = DetectionParity::all;
            else if (v == "odd") c.pulse.detection = DetectionParity::odd_only;
            else if (v == "even") c.pulse.detection = DetectionParity::even_only;
            else throw ConfigError("pulse.detection", "pulse.detection: expected all, odd or even, got '" + v + "'");
          },
          always([](const RunConfig& c) { return to_string(c.pulse.detection); })},
      SW_DOUBLE("pulse.parity_leak", pulse.parity_leak),
      Key{"pulse.readout",
          [](RunConfig& c, const std::string& v) {
            if (v == "resonant") c.pulse.readout = Readout::resonant;
            else if (v == "open_band") c.pulse.readout = Readout::open_band;
            else throw ConfigError("pulse.readout", "pulse.readout: expected resonant or open_band, got '" + v + "'");
          },
          always([](const RunConfig& c) { return to_string(c.pulse.readout); })},

      Key{"ensemble.n_realizations",
          [](RunConfig& c, const std::string& v) {
            ens(c).n_realizations = parse_small_int("ensemble.n_realizations", v);
          },
          if_ensemble([](const EnsembleSpec& e) { return std::to_string(e.n_realizations); })},
      Key{"ensemble.be_mean_T",
          [](RunConfig& c, const std::string& v) {
            ens(c).be_mean_tesla = parse_double("ensemble.be_mean_T", v);
          },
          if_ensemble([](const EnsembleSpec& e) { return fmt(e.be_mean_tesla); })},
      Key{"ensemble.be_sigma_T",
          [](RunConfig& c, const std::string& v) {
            ens(c).be_sigma_tesla = parse_double("ensemble.be_sigma_T", v);
          },
          if_ensemble([](const EnsembleSpec& e) { return fmt(e.be_sigma_tesla); })},
      Key{"ensemble.mn_count_mean",
          [](RunConfig& c, const std::string& v) {
            if (v == "none") ens(c).mn_count_mean.reset();
            else ens(c).mn_count_mean = parse_double("ensemble.mn_count_mean", v);
          },
          if_ensemble([](const EnsembleSpec& e) {
            return e.mn_count_mean ? fmt(*e.mn_count_mean) : std::string("none");
          })},
      Key{"ensemble.mn_max",
          [](RunConfig& c, const std::string& v) {
            ens(c).mn_max = parse_small_int("ensemble.mn_max", v);
          },
          if_ensemble([](const EnsembleSpec& e) { return std::to_string(e.mn_max); })},
      Key{"ensemble.seed",
          [](RunConfig& c, const std::string& v) {
            const long long s = parse_int("ensemble.seed", v);
            if (s < 0) throw ConfigError("ensemble.seed", "ensemble.seed: must be >= 0");
            ens(c).seed = static_cast<std::uint64_t>(s);
          },
          if_ensemble([](const EnsembleSpec& e) { return std::to_string(e.seed); })},

      SW_DOUBLE("grid.t_max_ps", grid.t_max_ps),
      SW_DOUBLE("grid.dt_ps", grid.dt_ps),
      SW_INT("analysis.max_order", analysis.max_order),
      SW_DOUBLE("analysis.sv_threshold", analysis.sv_threshold),

      SW_DOUBLE("magnetics.g_bare", magnetics.g_bare),
      SW_DOUBLE("magnetics.n0_alpha_meV", magnetics.n0_alpha_mev),
      SW_DOUBLE("magnetics.n0_beta_meV", magnetics.n0_beta_mev),
      SW_DOUBLE("magnetics.x_eff", magnetics.x_eff),
      SW_DOUBLE("magnetics.T_eff_K", magnetics.t_eff_k),
      SW_DOUBLE("magnetics.g_mn", magnetics.g_mn),
      SW_DOUBLE("magnetics.n0_cations_cm3", magnetics.n0_cations_cm3),
      SW_DOUBLE("magnetics.x_nominal", magnetics.x_nominal),

      Key{"state.n_spins",
          [](RunConfig& c, const std::string& v) { st(c).n_spins = parse_small_int("state.n_spins", v); },
          if_state([](const StateSpec& s) { return std::to_string(s.n_spins); })},
      Key{"state.spin",
          [](RunConfig& c, const std::string& v) { st(c).spin = parse_double("state.spin", v); },
          if_state([](const StateSpec& s) { return fmt(s.spin); })},
      Key{"state.coefficients",
          [](RunConfig& c, const std::string& v) {
            st(c).coefficients_re = parse_list("state.coefficients", v);
          },
          if_state([](const StateSpec& s) { return fmt_list(s.coefficients_re); })},
      Key{"state.coefficients_im",
          [](RunConfig& c, const std::string& v) {
            st(c).coefficients_im = parse_list("state.coefficients_im", v);
          },
          if_state([](const StateSpec& s) {
            if (!s.coefficients_im.empty()) return fmt_list(s.coefficients_im);
            return fmt_list(std::vector<double>(s.coefficients_re.size(), 0.0));
          })},
      Key{"state.t_ps",
          [](RunConfig& c, const std::string& v) { st(c).t_ps = parse_double("state.t_ps", v); },
          if_state([](const StateSpec& s) { return fmt(s.t_ps); })},
      Key{"state.omega0_rad_per_ps",
          [](RunConfig& c, const std::string& v) {
            st(c).omega0_rad_per_ps = parse_double("state.omega0_rad_per_ps", v);
          },
          if_state([](const StateSpec& s) { return fmt(s.omega0_rad_per_ps); })},

      Key{"output_dir",
          [](RunConfig& c, const std::string& v) {
            if (v.empty()) throw ConfigError("output_dir", "output_dir: must not be empty");
            c.output_dir = v;
          },
          always([](const RunConfig& c) { return c.output_dir; })},
      Key{"output.plot",
          [](RunConfig& c, const std::string& v) { c.plot = parse_bool("output.plot", v); },
          always([](const RunConfig& c) { return std::string(c.plot ? "true" : "false"); })},
  };
  return table;
}

#undef SW_DOUBLE
#undef SW_INT

// Maps the field prefix of a module validation message to its config key.
std::string key_for(const std::string& section, const std::string& message) {
  static const std::map<std::string, std::string> fields = {
      {"system:n_donors", "system.n_donors"},
      {"system:n_mn", "system.n_mn"},
      {"system:B", "system.B_T"},
      {"system:T", "system.T_K"},
      {"system:g_mn", "system.g_mn"},
      {"system:g_electron", "system.g_electron"},
      {"system:B_e_per_ion", "system.Be_per_ion_T"},
      {"system:B_e_donor", "system.Be_donor_T"},
      {"system:delta_eh", "system.delta_eh_meV"},
      {"system:E_e", "system.exciton_energy_meV"},
      {"system:pump_photon_energy", "system.pump_photon_meV"},
      {"system:resonance_linewidth", "system.linewidth_meV"},
      {"pulse:epsilon", "pulse.epsilon"},
      {"pulse:parity_leak", "pulse.parity_leak"},
      {"ensemble:n_realizations", "ensemble.n_realizations"},
      {"ensemble:be_mean", "ensemble.be_mean_T"},
      {"ensemble:be_sigma", "ensemble.be_sigma_T"},
      {"ensemble:mn_count_mean", "ensemble.mn_count_mean"},
      {"ensemble:mn_max", "ensemble.mn_max"},
      {"magnetics:x_eff", "magnetics.x_eff"},
      {"magnetics:T_eff", "magnetics.T_eff_K"},
      {"magnetics:n0_cations", "magnetics.n0_cations_cm3"},
      {"magnetics:n0_beta", "magnetics.n0_beta_meV"},
      {"magnetics:x_nominal", "magnetics.x_nominal"},
  };
  const auto colon = message.find(':');
  if (colon != std::string::npos) {
    const auto it = fields.find(section + ":" + message.substr(0, colon));
    if (it != fields.end()) return it->second;
  }
  return section;
}

template <class F>
void check(const std::string& section, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    const std::string key = key_for(section, e.what());
    throw ConfigError(key, key + ": " + e.what());
  } catch (const ResourceLimitError& e) {
    throw ConfigError(section == "system" ? "system.n_mn" : section + ".mn_max",
                      std::string(section) + ": " + e.what());
  }
}

}  // namespace

std::string to_string(Geometry g) { return g == Geometry::voigt ? "voigt" : "faraday"; }

std::string to_string(DetectionParity d) {
  switch (d) {
    case DetectionParity::all: return "all";
    case DetectionParity::odd_only: return "odd";
    case DetectionParity::even_only: return "even";
  }
  return "all";
}

std::string to_string(Readout r) { return r == Readout::resonant ? "resonant" : "open_band"; }

void GridSpec::validate() const {
  if (!(t_max_ps > 0.0)) throw ConfigError("grid.t_max_ps", "grid.t_max_ps: must be > 0");
  if (!(dt_ps > 0.0)) throw ConfigError("grid.dt_ps", "grid.dt_ps: must be > 0");
  if (dt_ps >= t_max_ps) throw ConfigError("grid.dt_ps", "grid.dt_ps: must be smaller than grid.t_max_ps");
  const double n = std::floor(t_max_ps / dt_ps + 1e-9) + 1.0;
  if (n < static_cast<double>(kMinTraceSamples)) {
    throw ConfigError("grid.dt_ps", "grid.dt_ps: grid has fewer than 16 samples");
  }
  if (n > 1e7) throw ConfigError("grid.dt_ps", "grid.dt_ps: grid exceeds 1e7 samples");
}

void RunConfig::validate() const {
  check("system", [&] { system.validate(); });
  check("pulse", [&] { pulse.validate(); });
  if (ensemble) {
    check("ensemble", [&] {
      ensemble->validate();
      SystemSpec largest = system;
      if (ensemble->mn_count_mean) largest.n_mn = ensemble->mn_max;
      largest.validate();
    });
  }
  grid.validate();
  const double n = std::floor(grid.t_max_ps / grid.dt_ps + 1e-9) + 1.0;
  if (analysis.max_order < 0) {
    throw ConfigError("analysis.max_order", "analysis.max_order: must be >= 0 (0 selects the default)");
  }
  if (analysis.max_order > 0 && analysis.max_order > static_cast<int>(n / 3.0)) {
    throw ConfigError("analysis.max_order", "analysis.max_order: must not exceed samples / 3");
  }
  if (!(analysis.sv_threshold > 0.0 && analysis.sv_threshold < 1.0)) {
    throw ConfigError("analysis.sv_threshold", "analysis.sv_threshold: must lie in (0, 1)");
  }
  check("magnetics", [&] { magnetics.validate(); });
  if (state) {
    if (state->n_spins < 2) throw ConfigError("state.n_spins", "state.n_spins: must be >= 2");
    const double twice = 2.0 * state->spin;
    if (!(state->spin > 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
      throw ConfigError("state.spin", "state.spin: must be a positive half-integer");
    }
    const auto expected = static_cast<std::size_t>(state->n_spins * std::lround(twice) + 1);
    if (state->coefficients_re.size() != expected) {
      throw ConfigError("state.coefficients", "state.coefficients: expected " +
                                                  std::to_string(expected) + " entries");
    }
    if (!state->coefficients_im.empty() && state->coefficients_im.size() != expected) {
      throw ConfigError("state.coefficients_im", "state.coefficients_im: expected " +
                                                     std::to_string(expected) + " entries");
    }
    double norm = 0.0;
    for (double v : state->coefficients_re) norm += v * v;
    for (double v : state->coefficients_im) norm += v * v;
    if (norm == 0.0) throw ConfigError("state.coefficients", "state.coefficients: all zero");
  }
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  std::map<std::string, const Key*> index;
  for (const Key& k : keys()) index[k.name] = &k;

  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = index.find(key);
    if (it == index.end()) {
      throw ConfigError(key, source + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError(key, source + ":" + std::to_string(lineno) + ": repeated key '" + key + "'");
    }
    it->second->set(cfg, value);
  }
  if (cfg.ensemble && !seen.count("ensemble.n_realizations")) {
    throw ConfigError("ensemble.n_realizations",
                      "ensemble.n_realizations: required when any ensemble key is set");
  }
  if (cfg.state && !seen.count("state.coefficients")) {
    throw ConfigError("state.coefficients", "state.coefficients: required when any state key is set");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Key& k : keys()) {
    if (auto v = k.get(cfg)) out.emplace_back(k.name, *v);
  }
  return out;
}

std::string format_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : resolved_entries(cfg)) out += k + " = " + v + "\n";
  return out;
}

}  // namespace spinweave

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
#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinweave/config.hpp"
#include "spinweave/dynamics.hpp"
#include "spinweave/entanglement.hpp"
#include "spinweave/errors.hpp"
#include "spinweave/io.hpp"
#include "spinweave/magnetics.hpp"
#include "spinweave/spectral.hpp"
#include "spinweave/version.hpp"
#include "spinweave/vibronic.hpp"

namespace spinweave::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
  } else {
    write_file_atomic(output, text);
  }
}

// Mean-subtracted fit shared by simulate and analyze.
ModeSet analyze_trace(const Trace& trace, const FitOptions& options) {
  return fit_damped_sinusoids(trace.mean_subtracted(), options);
}

int resolved_max_order(const FitOptions& options, std::size_t n) {
  return options.max_order > 0 ? options.max_order : std::min(static_cast<int>(n / 3), 40);
}

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
  bool plot = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  RunConfig cfg = load_config(a.config);
  if (a.seed && cfg.ensemble) cfg.ensemble->seed = *a.seed;
  if (!a.output_dir.empty()) cfg.output_dir = a.output_dir;
  if (a.plot) cfg.plot = true;

  SystemSpec system = cfg.system;
  const bool g_auto = !system.g_electron;
  if (g_auto) system.g_electron = effective_g(system.b_tesla, cfg.magnetics);

  const Trace trace =
      cfg.ensemble ? ensemble_simulate(system, cfg.pulse, *cfg.ensemble, cfg.grid.t_max_ps, cfg.grid.dt_ps)
                   : simulate(system, cfg.pulse, cfg.grid.t_max_ps, cfg.grid.dt_ps);
  const auto spectrum = fft_spectrum(trace);
  const ModeSet modes = analyze_trace(trace, cfg.analysis);

  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());

  ordered_json report;
  report["tool"] = "spinweave";
  report["version"] = kVersion;
  report["command"] = "simulate";
  report["seed"] = cfg.ensemble ? ordered_json(cfg.ensemble->seed) : ordered_json(nullptr);
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : resolved_entries(cfg)) config[k] = v;
  report["config"] = config;
  report["resolved"] = {{"g_electron", *system.g_electron},
                        {"g_electron_source", g_auto ? "effective_g" : "config"},
                        {"resonance_factor", resonance_factor(system)},
                        {"analysis.max_order", resolved_max_order(cfg.analysis, trace.size())},
                        {"analysis.sv_threshold", cfg.analysis.sv_threshold},
                        {"analysis.mean_subtracted", true}};
  report["outputs"] = {{"samples", trace.size()}, {"modes", modes.modes.size()},
                       {"residual_rms", modes.residual_rms}, {"warnings", modes.warnings}};

  write_file_atomic(dir / "trace.csv", trace_csv(trace));
  write_file_atomic(dir / "spectrum.csv", spectrum_csv(spectrum));
  write_file_atomic(dir / "modes.json", modes_json(modes));
  write_file_atomic(dir / "report.json", report.dump(2) + "\n");
  if (cfg.plot) write_file_atomic(dir / "plot.svg", plot_svg(trace, spectrum));
  out << "wrote " << (dir / "trace.csv").string() << " (" << trace.size() << " samples, "
      << modes.modes.size() << " modes)\n";
  return kOk;
}

struct AnalyzeArgs {
  std::string trace;
  int max_order = 0;
  double sv_threshold = 1e-3;
  std::string output;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const Trace trace = parse_trace_csv(read_file(a.trace), a.trace);
  FitOptions options{a.max_order, a.sv_threshold};
  if (options.max_order < 0) throw ConfigError("max-order", "--max-order: must be >= 0");
  if (!(options.sv_threshold > 0.0 && options.sv_threshold < 1.0)) {
    throw ConfigError("sv-threshold", "--sv-threshold: must lie in (0, 1)");
  }
  if (options.max_order > static_cast<int>(trace.size() / 3)) {
    throw ConfigError("max-order", "--max-order: must not exceed samples / 3");
  }
  emit(modes_json(analyze_trace(trace, options)), a.output, out);
  return kOk;
}

struct MagneticFlags {
  MagneticParams params;
  void add(CLI::App& app) {
    app.add_option("--g-bare", params.g_bare, "bare electron g-factor");
    app.add_option("--n0-alpha", params.n0_alpha_mev, "s-d exchange n0*alpha (meV)");
    app.add_option("--n0-beta", params.n0_beta_mev, "p-d exchange n0*beta (meV)");
    app.add_option("--x-eff", params.x_eff, "effective Mn fraction");
    app.add_option("--t-eff", params.t_eff_k, "effective Mn temperature (K)");
    app.add_option("--g-mn", params.g_mn, "Mn g-factor");
    app.add_option("--x-nominal", params.x_nominal, "nominal Mn fraction");
  }
};

struct PredictArgs {
  double b_min = 0.0;
  double b_max = 7.0;
  int steps = 15;
  double b_e = 5.02;
  MagneticFlags mag;
  std::string output;
};

int cmd_predict(const PredictArgs& a, std::ostream& out) {
  if (!(a.b_min >= 0.0) || !std::isfinite(a.b_max)) throw ConfigError("b-min", "--b-min: must be >= 0");
  if (a.steps < 1) throw ConfigError("steps", "--steps: must be >= 1");
  if (a.steps > 1 && !(a.b_max > a.b_min)) throw ConfigError("b-max", "--b-max: must exceed --b-min");
  if (!(a.b_e >= 0.0)) throw ConfigError("b-e", "--b-e: must be >= 0");
  try {
    a.mag.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("magnetics", std::string("magnetics: ") + e.what());
  }
  std::vector<double> grid;
  for (int i = 0; i < a.steps; ++i) {
    grid.push_back(a.steps == 1 ? a.b_min
                                : a.b_min + (a.b_max - a.b_min) * i / static_cast<double>(a.steps - 1));
  }
  emit(field_sweep_csv(predict_lines(grid, a.mag.params, a.b_e)), a.output, out);
  return kOk;
}

struct FitArgs {
  std::string data;
  std::string model;
  double b_e_init = 5.0;
  MagneticFlags mag;
  std::string output;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  FieldModel model;
  if (a.model == "sf") model = FieldModel::sf;
  else if (a.model == "pr") model = FieldModel::pr;
  else if (a.model == "pre") model = FieldModel::pre;
  else throw ConfigError("model", "--model: expected sf, pr or pre");
  const auto data = parse_field_csv(read_file(a.data), a.data);
  FieldFit fit;
  try {
    fit = fit_field_dependence(data, model, a.mag.params, a.b_e_init);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("data", std::string("data: ") + e.what());
  }
  double scale = 0.0;
  for (const auto& p : data) scale = std::max(scale, std::abs(p.nu));
  auto j = nlohmann::json::parse(field_fit_json(fit));
  j["exact_recovery"] = fit.converged && fit.residual_rms <= 1e-8 * std::max(scale, 1e-300);
  emit(j.dump(2) + "\n", a.output, out);
  return fit.converged ? kOk : kNumeric;
}

struct EntangleArgs {
  std::string config;
  std::string output;
};

int cmd_entangle(const EntangleArgs& a, std::ostream& out) {
  const RunConfig cfg = load_config(a.config);
  EntanglementReport report;
  if (cfg.state) {
    const StateSpec& s = *cfg.state;
    SymmetricSuperposition sup;
    sup.n_spins = s.n_spins;
    sup.spin_s = Spin::from_double(s.spin);
    sup.coefficients = ComplexVector(static_cast<Eigen::Index>(s.coefficients_re.size()));
    for (std::size_t k = 0; k < s.coefficients_re.size(); ++k) {
      const double im = s.coefficients_im.empty() ? 0.0 : s.coefficients_im[k];
      sup.coefficients(static_cast<Eigen::Index>(k)) = Complex(s.coefficients_re[k], im);
    }
    sup.coefficients.normalize();
    const ComplexVector psi = superposition_state(sup, s.t_ps, s.omega0_rad_per_ps);
    report = entanglement_report(
        psi, std::vector<int>(static_cast<std::size_t>(s.n_spins), sup.spin_s.dim()));
  } else {
    // Post-pump exciton-present state, reduced onto the impurity spins.
    SystemSpec system = cfg.system;
    if (!system.g_electron) system.g_electron = effective_g(system.b_tesla, cfg.magnetics);
    const HamiltonianPair pair = build_hamiltonians(system);
    const DensityState state =
        pump(thermal_state(pair, system.temperature_k), pair, cfg.pulse, resonance_factor(system));
    const double weight = state.excited.trace().real();
    if (!(weight > 0.0)) throw NumericError("entangle: pump left no exciton population");
    ComplexMatrix rho = state.excited / weight;
    std::vector<int> dims = pair.excited_dims;
    if (system.include_exciton_electron) {
      std::vector<std::size_t> keep(dims.size() - 1);
      for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
      rho = partial_trace(rho, Bipartition{dims, keep});
      dims.pop_back();
    }
    if (dims.size() < 2) throw ConfigError("system.n_mn", "system: need at least two impurity spins");
    report = entanglement_report(rho, dims);
  }
  emit(entanglement_json(report), a.output, out);
  return kOk;
}

struct ChainArgs {
  double pr_e_zero_field = 4.689;
  double b = 7.0;
  std::optional<double> ions_per_hole;
  MagneticFlags mag;
  std::string output;
};

int cmd_chain(const ChainArgs& a, std::ostream& out) {
  if (!(a.pr_e_zero_field > 0.0)) throw ConfigError("pr-e-zero-field", "--pr-e-zero-field: must be > 0");
  if (!(a.b >= 0.0)) throw ConfigError("b", "--b: must be >= 0");
  if (a.ions_per_hole && !(*a.ions_per_hole >= 0.0)) {
    throw ConfigError("ions-per-hole", "--ions-per-hole: must be >= 0");
  }
  emit(chain_json(estimate_exchange_chain(a.pr_e_zero_field, a.mag.params, a.b, a.ions_per_hole)),
       a.output, out);
  return kOk;
}

struct FcArgs {
  double huang_rhys = 1.06;
  int n_levels = 40;
  int k_max = 10;
  std::string output;
};

int cmd_fc(const FcArgs& a, std::ostream& out) {
  VibronicSpec spec;
  spec.huang_rhys = a.huang_rhys;
  spec.n_levels = a.n_levels;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("huang-rhys", std::string("--") + e.what());
  }
  if (a.k_max < 0 || a.k_max >= a.n_levels) throw ConfigError("k-max", "--k-max: must lie in [0, n-levels)");
  emit(ladder_csv(raman_overtone_ladder(spec, a.k_max)), a.output, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"spinweave: impurity spin coherence simulator and analysis tools", "spinweave"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "pump-probe simulation: trace, spectrum, modes, report");
  simulate->add_option("--config", sim.config, "run configuration")->required();
  simulate->add_option("--seed", sim.seed, "override ensemble.seed");
  simulate->add_option("--output-dir", sim.output_dir, "override output_dir");
  simulate->add_flag("--plot", sim.plot, "also write plot.svg");

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "damped-sinusoid fit of a trace CSV");
  analyze->add_option("--trace", ana.trace, "trace CSV (t_ps,signal)")->required();
  analyze->add_option("--max-order", ana.max_order, "model order cap (0: default)");
  analyze->add_option("--sv-threshold", ana.sv_threshold, "relative singular-value cutoff");
  analyze->add_option("--output", ana.output, "write JSON here instead of stdout");

  PredictArgs pred;
  auto* predict = app.add_subcommand("predict", "line positions versus field");
  predict->add_option("--b-min", pred.b_min, "first field (T)");
  predict->add_option("--b-max", pred.b_max, "last field (T)");
  predict->add_option("--steps", pred.steps, "number of field points");
  predict->add_option("--b-e", pred.b_e, "exchange field for the PR(e) line (T)");
  pred.mag.add(*predict);
  predict->add_option("--output", pred.output, "write CSV here instead of stdout");

  FitArgs fitargs;
  auto* fit = app.add_subcommand("fit", "fit line positions versus field");
  fit->add_option("--data", fitargs.data, "CSV (B_T,nu_cm1)")->required();
  fit->add_option("--model", fitargs.model, "sf, pr or pre")->required();
  fit->add_option("--b-e-init", fitargs.b_e_init, "starting exchange field for pre (T)");
  fitargs.mag.add(*fit);
  fit->add_option("--output", fitargs.output, "write JSON here instead of stdout");

  EntangleArgs ent;
  auto* entangle = app.add_subcommand("entangle", "entanglement report for a configured state");
  entangle->add_option("--config", ent.config, "run configuration")->required();
  entangle->add_option("--output", ent.output, "write JSON here instead of stdout");

  ChainArgs ch;
  auto* chain = app.add_subcommand("chain", "exchange field -> localization -> Huang-Rhys estimate");
  chain->add_option("--pr-e-zero-field", ch.pr_e_zero_field, "zero-field PR(e) line (cm^-1)");
  chain->add_option("--b", ch.b, "field for the Huang-Rhys factor (T)");
  chain->add_option("--ions-per-hole", ch.ions_per_hole, "replace the modeled ion count");
  ch.mag.add(*chain);
  chain->add_option("--output", ch.output, "write JSON here instead of stdout");

  FcArgs fc;
  auto* fcmd = app.add_subcommand("fc", "Franck-Condon overtone ladder");
  fcmd->add_option("--huang-rhys", fc.huang_rhys, "Huang-Rhys factor");
  fcmd->add_option("--n-levels", fc.n_levels, "oscillator truncation");
  fcmd->add_option("--k-max", fc.k_max, "highest overtone");
  fcmd->add_option("--output", fc.output, "write CSV here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out);
    if (*analyze) return cmd_analyze(ana, out);
    if (*predict) return cmd_predict(pred, out);
    if (*fit) return cmd_fit(fitargs, out);
    if (*entangle) return cmd_entangle(ent, out);
    if (*chain) return cmd_chain(ch, out);
    if (*fcmd) return cmd_fc(fc, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}

}  // namespace spinweave::cli

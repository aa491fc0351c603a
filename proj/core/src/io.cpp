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
#include "spinweave/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "spinweave/errors.hpp"

namespace spinweave {
namespace {

using nlohmann::json;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_cell(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  out = std::strtod(cell.c_str(), &end);
  return end == cell.c_str() + cell.size() && std::isfinite(out);
}

// Rows of a two-column numeric CSV with the given header.
std::vector<std::pair<double, double>> parse_two_columns(const std::string& text,
                                                         const std::string& header,
                                                         const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::pair<double, double>> rows;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line != header) {
        throw ConfigError(source, source + ":" + std::to_string(lineno) + ": expected header '" +
                                      header + "'");
      }
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split_fields(line);
    double a = 0.0;
    double b = 0.0;
    if (cells.size() != 2 || !parse_cell(cells[0], a) || !parse_cell(cells[1], b)) {
      throw ConfigError(source, source + ":" + std::to_string(lineno) + ": malformed row '" +
                                    line + "'");
    }
    rows.emplace_back(a, b);
  }
  if (!have_header) throw ConfigError(source, source + ": empty file");
  return rows;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trace_csv(const Trace& trace) {
  std::string out = "t_ps,signal\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += format_number(trace.t[i]) + "," + format_number(trace.y[i]) + "\n";
  }
  return out;
}

Trace parse_trace_csv(const std::string& text, const std::string& source) {
  Trace trace;
  for (const auto& [t, y] : parse_two_columns(text, "t_ps,signal", source)) {
    trace.t.push_back(t);
    trace.y.push_back(y);
  }
  try {
    trace.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source, source + ": " + e.what());
  }
  return trace;
}

std::string spectrum_csv(const std::vector<SpectrumPoint>& spectrum) {
  std::string out = "freq_cm1,power\n";
  for (const auto& p : spectrum) out += format_number(p.freq_cm1) + "," + format_number(p.power) + "\n";
  return out;
}

std::string field_sweep_csv(const std::vector<LinePrediction>& rows) {
  std::string out = "B_T,nu_PR,nu_PRe,nu_SF,nu_2SF,nu_3SF\n";
  for (const auto& r : rows) {
    out += format_number(r.b_tesla) + "," + format_number(r.nu_pr) + "," +
           format_number(r.nu_pre) + "," + format_number(r.nu_sf) + "," +
           format_number(r.nu_2sf) + "," + format_number(r.nu_3sf) + "\n";
  }
  return out;
}

std::string ladder_csv(const std::vector<LadderEntry>& ladder) {
  std::string out = "k,intensity,ratio_to_fundamental\n";
  for (const auto& e : ladder) {
    out += std::to_string(e.k) + "," + format_number(e.intensity) + "," + format_number(e.ratio) + "\n";
  }
  return out;
}

std::vector<FieldPoint> parse_field_csv(const std::string& text, const std::string& source) {
  std::vector<FieldPoint> out;
  for (const auto& [b, nu] : parse_two_columns(text, "B_T,nu_cm1", source)) out.push_back({b, nu});
  if (out.empty()) throw ConfigError(source, source + ": no data rows");
  return out;
}

std::string modes_json(const ModeSet& modes) {
  json j;
  j["modes"] = json::array();
  for (const Mode& m : modes.modes) {
    j["modes"].push_back({{"freq_cm1", m.freq_cm1},
                          {"damping_ps", number_or_null(m.damping_ps)},
                          {"amplitude", m.amplitude},
                          {"phase_rad", m.phase_rad}});
  }
  j["residual_rms"] = modes.residual_rms;
  j["model_order"] = modes.model_order;
  j["warnings"] = modes.warnings;
  return dump(j);
}

ModeSet parse_modes_json(const std::string& text) {
  ModeSet out;
  try {
    const json j = json::parse(text);
    for (const auto& m : j.at("modes")) {
      Mode mode;
      mode.freq_cm1 = m.at("freq_cm1").get<double>();
      mode.damping_ps = m.at("damping_ps").is_null() ? std::numeric_limits<double>::infinity()
                                                      : m.at("damping_ps").get<double>();
      mode.amplitude = m.at("amplitude").get<double>();
      mode.phase_rad = m.at("phase_rad").get<double>();
      out.modes.push_back(mode);
    }
    out.residual_rms = j.at("residual_rms").get<double>();
    out.model_order = j.at("model_order").get<int>();
    if (j.contains("warnings")) out.warnings = j["warnings"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError("modes", std::string("modes: ") + e.what());
  }
  return out;
}

std::string entanglement_json(const EntanglementReport& report) {
  json j;
  j["entries"] = json::array();
  for (const auto& e : report.entries) {
    j["entries"].push_back({{"bipartition", e.bipartition},
                            {"negativity", e.negativity},
                            {"entropy_bits", e.entropy_bits ? json(*e.entropy_bits) : json(nullptr)},
                            {"purity", e.purity}});
  }
  j["min_purity"] = report.min_purity;
  j["participant_count"] = report.participant_count;
  return dump(j);
}

std::string field_fit_json(const FieldFit& fit) {
  json j;
  const char* model = fit.model == FieldModel::sf ? "SF" : fit.model == FieldModel::pr ? "PR" : "PRe";
  j["model"] = model;
  json params = json::object();
  json sigma = json::object();
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    params[fit.names[i]] = fit.values[i];
    const auto k = static_cast<Eigen::Index>(i);
    sigma[fit.names[i]] = number_or_null(std::sqrt(std::max(0.0, fit.covariance(k, k))));
  }
  j["parameters"] = params;
  j["std_errors"] = sigma;
  json cov = json::array();
  for (Eigen::Index r = 0; r < fit.covariance.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < fit.covariance.cols(); ++c) row.push_back(number_or_null(fit.covariance(r, c)));
    cov.push_back(row);
  }
  j["covariance"] = cov;
  j["residual_rms"] = fit.residual_rms;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  return dump(j);
}

std::string chain_json(const ExchangeChain& chain) {
  const json j = {{"B_e_T", chain.b_e_tesla},
                  {"psi_sq_peak_cm3", chain.psi_sq_peak_cm3},
                  {"radius_A", chain.radius_angstrom},
                  {"length_A", chain.length_angstrom},
                  {"n_ions", chain.n_ions},
                  {"S_total", chain.s_total},
                  {"huang_rhys", chain.huang_rhys}};
  return dump(j);
}

std::string plot_svg(const Trace& trace, const std::vector<SpectrumPoint>& spectrum) {
  constexpr double kW = 640.0;
  constexpr double kH = 220.0;
  constexpr double kPad = 40.0;
  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
      << 2 * kH << "\" font-family=\"sans-serif\" font-size=\"11\">\n";

  auto panel = [&](const std::vector<double>& x, const std::vector<double>& y, double top,
                   const char* xlabel, const char* ylabel) {
    svg << "<rect x=\"" << kPad << "\" y=\"" << top + 10 << "\" width=\"" << kW - 2 * kPad
        << "\" height=\"" << kH - 50 << "\" fill=\"none\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << kW / 2 << "\" y=\"" << top + kH - 12 << "\" text-anchor=\"middle\">"
        << xlabel << "</text>\n";
    svg << "<text x=\"12\" y=\"" << top + kH / 2 << "\" transform=\"rotate(-90 12 " << top + kH / 2
        << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    if (x.size() < 2) return;
    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
    const double xs = (*xmax > *xmin) ? (kW - 2 * kPad) / (*xmax - *xmin) : 1.0;
    const double ys = (*ymax > *ymin) ? (kH - 50) / (*ymax - *ymin) : 1.0;
    svg << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
      svg << kPad + (x[i] - *xmin) * xs << ',' << top + 10 + (kH - 50) - (y[i] - *ymin) * ys << ' ';
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << kPad << "\" y=\"" << top + kH - 26 << "\">" << *xmin << "</text>\n";
    svg << "<text x=\"" << kW - kPad << "\" y=\"" << top + kH - 26 << "\" text-anchor=\"end\">"
        << *xmax << "</text>\n";
  };

  panel(trace.t, trace.y, 0.0, "delay (ps)", "signal");
  std::vector<double> f;
  std::vector<double> p;
  for (const auto& s : spectrum) {
    f.push_back(s.freq_cm1);
    p.push_back(s.power);
  }
  panel(f, p, kH, "frequency (cm^-1)", "power");
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace spinweave

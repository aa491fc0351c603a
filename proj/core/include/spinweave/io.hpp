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
#ifndef SPINWEAVE_IO_HPP
#define SPINWEAVE_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "spinweave/entanglement.hpp"
#include "spinweave/magnetics.hpp"
#include "spinweave/spectral.hpp"
#include "spinweave/trace.hpp"
#include "spinweave/vibronic.hpp"

namespace spinweave {

// CSV: comma separated, '.' decimal, LF endings, mandatory header. Numbers
// are written with 17 significant digits so files round-trip exactly.

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

std::string trace_csv(const Trace& trace);
/// Header `t_ps,signal`. Malformed content throws ConfigError naming the
/// line; a nonuniform grid throws ConfigError as well.
Trace parse_trace_csv(const std::string& text, const std::string& source = "<trace>");

std::string spectrum_csv(const std::vector<SpectrumPoint>& spectrum);
std::string field_sweep_csv(const std::vector<LinePrediction>& rows);
std::string ladder_csv(const std::vector<LadderEntry>& ladder);

/// Header `B_T,nu_cm1`.
std::vector<FieldPoint> parse_field_csv(const std::string& text, const std::string& source = "<data>");

std::string modes_json(const ModeSet& modes);
/// Inverse of modes_json (null damping reads back as +inf).
ModeSet parse_modes_json(const std::string& text);
std::string entanglement_json(const EntanglementReport& report);
std::string field_fit_json(const FieldFit& fit);
std::string chain_json(const ExchangeChain& chain);

/// Two stacked panels: the trace and its spectrum.
std::string plot_svg(const Trace& trace, const std::vector<SpectrumPoint>& spectrum);

std::string format_number(double v);

}  // namespace spinweave

#endif  // SPINWEAVE_IO_HPP

// Copyright 2026 The qmpe authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qmpe/dynamics.hpp"
#include "qmpe/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qmpe {

/// Flat-key run configuration shared by all CLI commands.  Parsed from
/// `key = value` text (presets are such files shipped under data/presets);
/// unknown keys are rejected.  Angle values accept a "pi" suffix
/// ("0.5pi" = pi/2).
struct RunConfig {
    // scenario
    std::string preset;          // resolved preset name, empty when explicit
    std::string label = "custom";
    std::string model = "xy";    // xy | disordered | none
    int n_sites = 0;
    double j0 = 0.0;             // [rad/s]
    double alpha = 0.0;
    double gamma = 0.0;          // [1/s]
    std::vector<double> thetas;  // [rad]
    std::vector<double> times;   // [s]
    bool echo = false;

    // disorder (model == disordered)
    double disorder_w = 0.0;
    int disorder_realizations = 0;
    std::uint64_t disorder_seed = 1;
    std::vector<std::string> disorder_files;

    // dephasing sweep (optional, simulate only)
    std::vector<double> sweep_gammas;

    // measurement budget
    int n_u = 500;
    int n_m = 30;
    std::uint64_t seed = 1;

    // subsystem family
    SubsystemSpec subsystems;

    // estimation
    std::string reference = "none"; // none | scenario

    // output
    std::string out_dir = "out";
    bool export_de = false;
};

/// Parses config text; `source_name` feeds error messages.  A
/// `scenario.preset` key loads the preset file first, then the remaining
/// keys override it.
RunConfig parse_config_text(const std::string &text, const std::string &source_name);
RunConfig parse_config_file(const std::string &path);

/// Loads a preset by name (searched in $QMPE_PRESET_DIR, then the built-in
/// preset directory) or by explicit path.
RunConfig load_preset(const std::string &name_or_path);
std::string find_preset_file(const std::string &name_or_path);

/// Range-checks every field; throws ConfigError with a diagnostic.
void validate_config(const RunConfig &config);

/// Canonical text rendering of the effective configuration (sorted keys);
/// the basis for the provenance hash.
std::string canonical_text(const RunConfig &config);
std::string config_hash(const RunConfig &config);

/// Quench scenario for one disorder realization (h empty unless
/// model == disordered).
QuenchScenario make_scenario(const RunConfig &config, const std::vector<double> &h,
                             const std::string &label);

} // namespace qmpe

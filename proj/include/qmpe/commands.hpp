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

#include "qmpe/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qmpe {

/// Writes exact oracle curves (one CSV per disorder realization or sweep
/// rate) plus a manifest; returns the written CSV paths.
std::vector<std::string> run_simulate(const RunConfig &config);

/// Writes one rmds-1 dataset file per (theta, time, realization); returns
/// the written paths.
std::vector<std::string> run_measure(const RunConfig &config);

/// Turns rmds-1 datasets into estimate CSVs (one per scenario group) with
/// jackknife errors per subsystem and subsystem-averaged rows.  When
/// `oracle_csv` is non-empty, prints the worst |estimate - oracle| / sigma
/// over matching rows to `log`.
std::vector<std::string> run_estimate(const RunConfig &config,
                                      const std::vector<std::string> &dataset_paths,
                                      const std::string &oracle_csv,
                                      std::ostream &log);

/// Crossing analysis over estimate/oracle CSVs: per-pair crossing times and
/// a QMPE verdict per scenario; writes report.json and crossings.csv into
/// out_dir and prints a summary to `log`.
void run_report(const std::vector<std::string> &csv_paths,
                const std::string &out_dir, std::ostream &log);

} // namespace qmpe

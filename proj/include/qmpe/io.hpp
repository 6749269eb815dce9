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

#include "qmpe/rm_protocol.hpp"
#include "qmpe/spin_core.hpp"
#include "qmpe/stats.hpp"

#include <string>
#include <vector>

namespace qmpe {

/// Locale-independent numeric text: 17 significant digits, lowercase
/// exponent; "nan" marks missing values.
std::string format_double(double v);
double parse_double(const std::string &token);

/// rmds-1 dataset files: line 1 is a JSON header; every further line is one
/// record with per-site unitaries as 8 reals (row-major, re/im interleaved)
/// followed by "|" and the measured bitstrings as 0/1 text.  This format is
/// also the ingestion path for real experimental data.
std::string rmds_to_string(const RMDataset &dataset);
void write_rmds(const std::string &path, const RMDataset &dataset);
RMDataset parse_rmds(const std::string &text, const std::string &source_name);
RMDataset read_rmds(const std::string &path);

/// Disorder vectors as plain text, one field value per line [rad/s].
void write_disorder(const std::string &path, const std::vector<double> &h);
std::vector<double> read_disorder(const std::string &path);

/// Dense complex matrix files ("demat-1"): JSON header line carrying the
/// site list, then one row per line with re/im interleaved entries.
void write_subsystem_density(const std::string &path, const SubsystemDensity &rho);
SubsystemDensity read_subsystem_density(const std::string &path);

/// One row of the estimate/oracle CSV schema:
///   t,theta,subsystem,EA,EA_err,FD,FD_err,n_excluded,source
struct EstimateRow {
    double t = 0.0;
    double theta = 0.0;
    std::string subsystem;
    double ea = 0.0, ea_err = 0.0;
    double fd = 0.0, fd_err = 0.0;
    int n_excluded = 0;
    std::string source; // "oracle" or "shadow"
};

struct EstimateCsv {
    std::string manifest; // JSON text of the leading manifest line
    std::vector<EstimateRow> rows;
};

void write_estimate_csv(const std::string &path, const std::string &manifest_json,
                        const std::vector<EstimateRow> &rows);
EstimateCsv read_estimate_csv(const std::string &path);

/// Groups CSV rows into per-(theta, subsystem) time series for a quantity
/// ("EA" or "FD"), preserving row order along the time axis.
std::vector<EstimateSeries> collect_series(const std::vector<EstimateRow> &rows,
                                           const std::string &quantity);

/// FNV-1a 64-bit hash rendered as fixed-width hex (config provenance).
std::string fnv1a_hex(const std::string &text);

} // namespace qmpe

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

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qmpe {

/// How a subsystem family is enumerated: sliding connected windows over the
/// whole chain, or every n_a-subset of an explicit site pool in
/// lexicographic order (which defines the "subsystem index" axis).
struct SubsystemSpec {
    enum class Mode { kConnected, kPool };
    Mode mode = Mode::kConnected;
    int n_a = 0;
    std::vector<int> pool; // used by kPool
};

std::vector<std::vector<int>> enumerate_subsystems(int n_sites,
                                                   const SubsystemSpec &spec);

/// Time-indexed estimates with one-sigma errors.  NaN marks a missing value
/// (e.g. a negative-moment estimate) or an absent error bar.
struct SeriesLabel {
    double theta = 0.0;
    std::string subsystem; // "4.5.6.7" site label or "avg"
    int realization = -1;  // disorder realization id, -1 when not applicable
    std::string quantity;  // "EA" or "FD"
};

struct EstimateSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> errors;
    SeriesLabel label;
};

struct JackknifeResult {
    double estimate = 0.0;
    double sigma = 0.0;
};

/// Leave-one-out jackknife over n >= 3 units.  statistic(-1) evaluates the
/// full sample; statistic(r) the sample with unit r dropped.  Variance is
/// (n-1)/n * sum_r (theta_(r) - mean theta_(.))^2.
JackknifeResult jackknife(int n, const std::function<double(int)> &statistic);

/// Jackknife of the sample mean (equals the classical standard error).
JackknifeResult jackknife_mean(const std::vector<double> &values);

/// Error rule for series averaging: standard deviation of the mean across
/// series (the disorder axis), or no error propagation (oracle curves).
/// Subsystem-averaged shadow estimates instead carry jointly jackknifed
/// errors computed in the estimation layer, where the per-unitary
/// contributions are available.
enum class AverageError { kStdOfMean, kNone };

/// Pointwise mean over series sharing one time grid.  Missing values are
/// excluded pairwise; a point missing everywhere stays missing.
EstimateSeries average_series(const std::vector<EstimateSeries> &list,
                              AverageError rule);

struct Crossing {
    double t_star = 0.0;
    bool significant = false;
};

/// First time where a - b changes sign, linearly interpolated between grid
/// points; nullopt when the sign never changes.  The crossing is flagged
/// significant when |a - b| exceeds the combined one-sigma error at one or
/// more grid points on each side.
std::optional<Crossing> detect_crossing(const EstimateSeries &a,
                                        const EstimateSeries &b);

/// Renders a site list as the CSV subsystem label ("4.5.6.7").
std::string subsystem_label(const std::vector<int> &sites);

} // namespace qmpe

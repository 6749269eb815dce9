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

#include "qmpe/diagonal_ensemble.hpp"
#include "qmpe/dynamics.hpp"
#include "qmpe/stats.hpp"

#include <string>
#include <vector>

namespace qmpe {

/// Exact, measurement-free EA and FD curves: the ground truth the shadow
/// pipeline is checked against.
struct ScenarioPoint {
    double ea = 0.0;
    double fd = 0.0; // NaN when no diagonal ensemble exists (H absent)
    std::vector<double> sector_populations; // subsystem charge-block traces
};

struct ScenarioResult {
    std::string label;
    double gamma = 0.0;
    std::vector<double> thetas;
    std::vector<std::vector<int>> subsystems;
    std::vector<double> times;
    // theta-major, then subsystem, then time
    std::vector<ScenarioPoint> points;

    const ScenarioPoint &at(std::size_t theta_index, std::size_t subsystem_index,
                            std::size_t time_index) const {
        return points[(theta_index * subsystems.size() + subsystem_index) *
                          times.size() +
                      time_index];
    }

    /// EA or FD curve for one (theta, subsystem); subsystem_index < 0 yields
    /// the subsystem average.
    EstimateSeries series(std::size_t theta_index, int subsystem_index,
                          const std::string &quantity) const;
};

/// Evolves every (theta, time) pair and reduces to every subsystem:
/// prepare_tilted -> evolve_pure -> dephased_subsystem_state -> exact_ea and
/// exact_frobenius against the cached diagonal ensemble (n_sites <= 14).
ScenarioResult run_scenario(const QuenchScenario &scenario,
                            const std::vector<double> &thetas,
                            const std::vector<std::vector<int>> &subsystems,
                            const std::vector<double> &times);

/// One result per dephasing rate, sharing the eigendecomposition and the
/// unitarily evolved states across the sweep.
std::vector<ScenarioResult> dephasing_sweep(const QuenchScenario &scenario,
                                            const std::vector<double> &gammas,
                                            const std::vector<double> &thetas,
                                            const std::vector<std::vector<int>> &subsystems,
                                            const std::vector<double> &times);

} // namespace qmpe

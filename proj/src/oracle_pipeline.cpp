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

#include "qmpe/oracle_pipeline.hpp"

#include "qmpe/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmpe {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> charge_block_traces(const SubsystemDensity &rho) {
    const int n_a = static_cast<int>(rho.sites.size());
    std::vector<double> traces(static_cast<std::size_t>(n_a) + 1, 0.0);
    for (Eigen::Index a = 0; a < rho.matrix.rows(); ++a) {
        const int k = up_count(static_cast<std::uint64_t>(a), n_a);
        traces[static_cast<std::size_t>(k)] += rho.matrix(a, a).real();
    }
    return traces;
}

ScenarioResult make_result(const std::string &label, double gamma,
                           const std::vector<double> &thetas,
                           const std::vector<std::vector<int>> &subsystems,
                           const std::vector<double> &times) {
    ScenarioResult result;
    result.label = label;
    result.gamma = gamma;
    result.thetas = thetas;
    result.subsystems = subsystems;
    result.times = times;
    result.points.resize(thetas.size() * subsystems.size() * times.size());
    return result;
}

} // namespace

EstimateSeries ScenarioResult::series(std::size_t theta_index,
                                      int subsystem_index,
                                      const std::string &quantity) const {
    const auto pick = [&](const ScenarioPoint &point) {
        return quantity == "FD" ? point.fd : point.ea;
    };
    if (subsystem_index >= 0) {
        EstimateSeries out;
        out.times = times;
        out.values.reserve(times.size());
        out.errors.assign(times.size(), kNan);
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            out.values.push_back(
                pick(at(theta_index, static_cast<std::size_t>(subsystem_index), ti)));
        }
        out.label = SeriesLabel{thetas[theta_index],
                                subsystem_label(subsystems[static_cast<std::size_t>(
                                    subsystem_index)]),
                                -1, quantity};
        return out;
    }
    std::vector<EstimateSeries> all;
    all.reserve(subsystems.size());
    for (std::size_t s = 0; s < subsystems.size(); ++s) {
        all.push_back(series(theta_index, static_cast<int>(s), quantity));
    }
    EstimateSeries avg = average_series(all, AverageError::kNone);
    avg.label = SeriesLabel{thetas[theta_index], "avg", -1, quantity};
    return avg;
}

std::vector<ScenarioResult> dephasing_sweep(const QuenchScenario &scenario,
                                            const std::vector<double> &gammas,
                                            const std::vector<double> &thetas,
                                            const std::vector<std::vector<int>> &subsystems,
                                            const std::vector<double> &times) {
    validate_scenario(scenario);
    if (scenario.n_sites > 14) {
        throw std::invalid_argument("run_scenario: n_sites must be <= 14");
    }
    if (gammas.empty() || thetas.empty() || subsystems.empty() || times.empty()) {
        throw std::invalid_argument("run_scenario: empty axis");
    }
    for (double gamma : gammas) {
        if (gamma < 0.0) {
            throw std::invalid_argument("run_scenario: gamma must be >= 0");
        }
    }

    SectorSpectrum spectrum;
    const bool has_hamiltonian = scenario.spec.has_value();
    if (has_hamiltonian) {
        spectrum = sector_eigendecomposition(*scenario.spec);
    }
    std::vector<SubsystemIndexer> indexers;
    indexers.reserve(subsystems.size());
    for (const auto &sites : subsystems) {
        indexers.emplace_back(scenario.n_sites, sites);
    }

    std::vector<ScenarioResult> results;
    results.reserve(gammas.size());
    for (double gamma : gammas) {
        results.push_back(
            make_result(scenario.label, gamma, thetas, subsystems, times));
    }

    for (std::size_t thi = 0; thi < thetas.size(); ++thi) {
        const PureState psi0 = prepare_tilted(scenario.n_sites, thetas[thi]);
        // The diagonal ensemble is gamma-independent: the coherence mask acts
        // trivially on sector-diagonal states.  Computed once per theta.
        std::vector<SubsystemDensity> de_states;
        if (has_hamiltonian) {
            const DiagonalEnsemble ensemble(spectrum, psi0);
            de_states.reserve(subsystems.size());
            for (const auto &indexer : indexers) {
                de_states.push_back(ensemble.subsystem(indexer));
            }
        }
        parallel_for(times.size(), [&](std::size_t ti) {
            const double t = times[ti];
            PureState psi_t = psi0;
            if (has_hamiltonian) {
                psi_t = scenario.echo ? echo_evolve(spectrum, psi0, t)
                                      : evolve_pure(spectrum, psi0, t);
            }
            const std::vector<Vector> components = sector_components(psi_t);
            for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
                for (std::size_t si = 0; si < subsystems.size(); ++si) {
                    const SubsystemDensity rho = dephased_subsystem_state(
                        components, gammas[gi], t, indexers[si]);
                    ScenarioPoint point;
                    point.ea = exact_ea(rho);
                    point.fd = has_hamiltonian
                                   ? exact_frobenius(rho, de_states[si])
                                   : kNan;
                    point.sector_populations = charge_block_traces(rho);
                    results[gi].points[(thi * subsystems.size() + si) * times.size() +
                                       ti] = std::move(point);
                }
            }
        });
    }
    return results;
}

ScenarioResult run_scenario(const QuenchScenario &scenario,
                            const std::vector<double> &thetas,
                            const std::vector<std::vector<int>> &subsystems,
                            const std::vector<double> &times) {
    return dephasing_sweep(scenario, {scenario.gamma}, thetas, subsystems,
                           times)
        .front();
}

} // namespace qmpe

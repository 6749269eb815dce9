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

#include "qmpe/hamiltonian.hpp"
#include "qmpe/spin_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qmpe {

/// One quench setup: tilt angle, optional Hamiltonian (absent for pure
/// dephasing), global dephasing rate and the evolution time grid.
struct QuenchScenario {
    std::optional<HamiltonianSpec> spec; // absent = free evolution (H = 0)
    int n_sites = 0;
    double theta = 0.0; // tilt angle [rad], in [0, pi]
    double gamma = 0.0; // dephasing rate [1/s], >= 0
    std::vector<double> times; // [s]
    bool echo = false; // insert a global X pulse at t/2 (off by default)
    std::string label; // descriptor carried into dataset and result headers
};

/// Validates the scenario invariants; throws std::invalid_argument.
void validate_scenario(const QuenchScenario &scenario);

/// Tilted ferromagnet: exp(i theta sigma_y / 2) applied per site to |down>,
/// i.e. the product state of cos(theta/2)|down> + sin(theta/2)|up>.
PureState prepare_tilted(int n_sites, double theta);

/// Unitary evolution psi(t) = sum_k V_k exp(-i E_k t) V_k^+ psi_k(0),
/// performed sector by sector.
PureState evolve_pure(const SectorSpectrum &spectrum, const PureState &psi0,
                      double t);

/// Echoed evolution U(t/2) X^N U(t/2) psi0 (global pi pulse about x at the
/// midpoint).
PureState echo_evolve(const SectorSpectrum &spectrum, const PureState &psi0,
                      double t);

/// Splits psi into its magnetization-sector components (full-length
/// vectors, zero outside sector k).
std::vector<Vector> sector_components(const PureState &psi);

/// Reduced state after global dephasing for time t applied to the already
/// unitarily evolved psi_t:
///   rho_A(t) = sum_{m,m'} exp(-2 Gamma t (m - m')^2) Tr_env |psi_m><psi_m'|
/// with m = k - N/2.  Exact for the collective jump operator
/// sqrt(Gamma) sum_i sz_i, which commutes with every Hamiltonian built here.
SubsystemDensity dephased_subsystem_state(const PureState &psi_t, double gamma,
                                          double t, const std::vector<int> &sites);

/// Channel applied to precomputed sector components with a shared indexer
/// (avoids redundant splits when sweeping subsystems or dephasing rates).
SubsystemDensity dephased_subsystem_state(const std::vector<Vector> &components,
                                          double gamma, double t,
                                          const SubsystemIndexer &indexer);

/// Same channel with no unitary evolution (spin-spin interaction off).
SubsystemDensity pure_dephasing_subsystem(const PureState &psi0, double gamma,
                                          double t, const std::vector<int> &sites);

/// Brute-force master-equation integrator (validation oracle, n_sites <= 6):
/// fixed-step RK4 on d rho / dt = -i [H, rho] + Gamma (L rho L - {L^2, rho}/2)
/// with L = sum_i sz_i.  Throws ConfigError when the step size is too coarse
/// (|H| dt > 0.1).
Matrix lindblad_oracle(const HamiltonianSpec &spec, double gamma,
                       const PureState &psi0, double t, int n_steps);

} // namespace qmpe

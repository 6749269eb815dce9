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
#include "qmpe/spin_core.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qmpe {

/// Single-qubit rotation applied before a projective z-basis measurement.
struct LocalUnitary {
    int site = 0;
    Eigen::Matrix2cd entries;
};

/// One sampled unitary assignment plus its measured bitstrings (stored as
/// basis indices in the chain's bit convention).
struct RMRecord {
    std::vector<LocalUnitary> unitaries; // one per site, in site order
    std::vector<std::uint64_t> bitstrings;
};

struct RMHeader {
    int n_sites = 0;
    double theta = 0.0;
    double time = 0.0;
    std::string scenario;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    int n_u = 0;
    int n_m = 0;
};

/// A full randomized-measurement dataset: header plus N_U records of N_M
/// bitstrings each.
struct RMDataset {
    RMHeader header;
    std::vector<RMRecord> records;
};

/// Haar-distributed 2x2 unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phases folded back into Q.
Eigen::Matrix2cd sample_cue(std::mt19937_64 &rng);

/// Outcome distribution p(s) = <s| U rho(t) U^+ |s> for the dephased state,
/// computed without materializing rho(t):
///   p(s) = sum_{m,m'} exp(-2 Gamma t (m-m')^2) (U psi_m)(s) conj((U psi_m')(s)).
Eigen::VectorXd measurement_distribution(const PureState &psi_t, double gamma,
                                         double t,
                                         const std::vector<Eigen::Matrix2cd> &unitaries);

/// Variant over precomputed sector components (shared across records).
Eigen::VectorXd measurement_distribution(const std::vector<Vector> &components,
                                         int n_sites, double gamma, double t,
                                         const std::vector<Eigen::Matrix2cd> &unitaries);

/// N_M i.i.d. draws from a probability vector (inverse-CDF sampling).
/// The distribution must be normalized within 1e-8.
std::vector<std::uint64_t> sample_bitstrings(const Eigen::VectorXd &distribution,
                                             int n_m, std::mt19937_64 &rng);

/// Simulates the full protocol at one evolution time: evolve once, then for
/// each record sample per-site CUE unitaries and draw N_M bitstrings.
/// Per-record RNG substreams make the dataset reproducible from
/// (seed, scenario, t) regardless of scheduling.  When the scenario carries
/// a Hamiltonian, `spectrum` may supply its cached eigendecomposition.
RMDataset run_rm_experiment(const QuenchScenario &scenario, double t, int n_u,
                            int n_m, std::uint64_t seed,
                            const SectorSpectrum *spectrum = nullptr);

/// Applies a tensor product of per-site 2x2 unitaries to a state vector.
Vector apply_local_unitaries(const Vector &psi, int n_sites,
                             const std::vector<Eigen::Matrix2cd> &unitaries);

} // namespace qmpe

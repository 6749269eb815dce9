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

#include "qmpe/spin_core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qmpe {

/// Power-law XY chain with optional transverse fields:
///   H = sum_{i>j} J0 / (2 |i-j|^alpha) (sx_i sx_j + sy_i sy_j)
///     + sum_i h_i sz_i
/// Open boundary conditions; every pair i > j is coupled.  Units: hbar = 1,
/// energies in rad/s, times in seconds.
struct HamiltonianSpec {
    int n_sites = 0;
    double j0 = 0.0;    // coupling amplitude [rad/s]
    double alpha = 0.0; // power-law exponent
    std::vector<double> fields; // per-site transverse field h_i [rad/s]
};

/// Pure XY coupling (h == 0).  The flip-flop matrix element between
/// |..up..down..> and |..down..up..> at distance r is J0 / r^alpha, since
/// sx sx + sy sy = 2 (s+ s- + s- s+).
HamiltonianSpec build_xy(int n_sites, double j0, double alpha);

/// XY coupling plus a diagonal field term sum_i h_i sz_i; commutes with the
/// total charge for any h.
HamiltonianSpec build_disordered(int n_sites, double j0, double alpha,
                                 std::vector<double> h);

/// Draws h_i i.i.d. uniform on [0, w * J0].
std::vector<double> sample_disorder(int n_sites, double w, double j0,
                                    std::mt19937_64 &rng);
std::vector<double> sample_disorder(int n_sites, double w, double j0,
                                    std::uint64_t seed);

/// Hamiltonian block restricted to the subspace spanned by `basis`
/// (real symmetric in the computational basis).
Eigen::MatrixXd sector_block(const HamiltonianSpec &spec,
                             const std::vector<std::uint64_t> &basis);

/// Dense 2^N x 2^N matrix; brute-force oracle for small chains.
Eigen::MatrixXd dense_matrix(const HamiltonianSpec &spec);

/// Eigenpairs of every magnetization sector.  Eigenvalues ascend within a
/// sector; eigenvector columns are orthonormal over the sector subspace.
struct SectorSpectrum {
    HamiltonianSpec spec;
    struct Sector {
        std::vector<std::uint64_t> basis; // ascending full-chain indices
        Eigen::VectorXd eigenvalues;      // [rad/s]
        Eigen::MatrixXd eigenvectors;     // real orthonormal columns
    };
    std::vector<Sector> sectors; // indexed by up-spin count k

    int n_sites() const { return spec.n_sites; }
};

/// Dense per-sector Hermitian eigendecomposition (n_sites <= 16); sector
/// diagonalizations run in parallel.
SectorSpectrum sector_eigendecomposition(const HamiltonianSpec &spec);

} // namespace qmpe

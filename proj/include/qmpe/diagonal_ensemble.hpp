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

#include <vector>

namespace qmpe {

/// Initial state dephased in the quench-Hamiltonian eigenbasis (the
/// infinite-time average).  Eigenvalues within a sector are grouped at an
/// absolute tolerance of 1e-9 * J0 * N and projected onto eigenspaces, so
/// the result is basis-independent under degeneracies; matrices across
/// sectors are already incoherent.
class DiagonalEnsemble {
  public:
    DiagonalEnsemble(const SectorSpectrum &spectrum, const PureState &psi0);

    int n_sites() const { return n_sites_; }

    /// Reduced ensemble state on the given sites; always block-diagonal
    /// across the subsystem charge sectors.
    SubsystemDensity subsystem(const std::vector<int> &sites) const;
    SubsystemDensity subsystem(const SubsystemIndexer &indexer) const;

  private:
    int n_sites_;
    std::vector<std::vector<std::uint64_t>> bases_;
    std::vector<Matrix> sector_states_; // dephased density block per sector
};

/// rho_A^DE for one subsystem (see DiagonalEnsemble for the cached form).
SubsystemDensity diagonal_ensemble(const SectorSpectrum &spectrum,
                                   const PureState &psi0,
                                   const std::vector<int> &sites);

/// Normalized Frobenius distance
///   FD = sqrt(1 - clamp(2 Tr[rho sigma] / Tr[rho^2 + sigma^2], 0, 1)),
/// bounded into [0, 1] against unphysical values.
double exact_frobenius(const Matrix &rho_a, const Matrix &rho_de);
inline double exact_frobenius(const SubsystemDensity &rho_a,
                              const SubsystemDensity &rho_de) {
    return exact_frobenius(rho_a.matrix, rho_de.matrix);
}

} // namespace qmpe

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

#include "qmpe/diagonal_ensemble.hpp"

#include "qmpe/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmpe {

DiagonalEnsemble::DiagonalEnsemble(const SectorSpectrum &spectrum,
                                   const PureState &psi0)
    : n_sites_(spectrum.n_sites()) {
    if (psi0.n_sites != n_sites_) {
        throw std::invalid_argument("DiagonalEnsemble: spectrum/state size mismatch");
    }
    const double group_tol =
        1e-9 * std::abs(spectrum.spec.j0) * static_cast<double>(n_sites_);
    bases_.resize(spectrum.sectors.size());
    sector_states_.resize(spectrum.sectors.size());
    parallel_for(spectrum.sectors.size(), [&](std::size_t k) {
        const auto &sector = spectrum.sectors[k];
        const Eigen::Index dim = static_cast<Eigen::Index>(sector.basis.size());
        bases_[k] = sector.basis;
        // Complex sector amplitudes as two real columns (real eigenbasis).
        Eigen::MatrixXd amp(dim, 2);
        for (Eigen::Index a = 0; a < dim; ++a) {
            const Complex v = psi0.amplitudes(
                static_cast<Eigen::Index>(sector.basis[static_cast<std::size_t>(a)]));
            amp(a, 0) = v.real();
            amp(a, 1) = v.imag();
        }
        const Eigen::MatrixXd coeff = sector.eigenvectors.transpose() * amp;
        // Group eigenvalues into (near-)degenerate runs and keep only the
        // projections onto those eigenspaces: rho_k = sum_g P_g psi psi^+ P_g.
        Matrix state = Matrix::Zero(dim, dim);
        Eigen::Index start = 0;
        while (start < dim) {
            Eigen::Index stop = start + 1;
            while (stop < dim && sector.eigenvalues(stop) -
                                         sector.eigenvalues(stop - 1) <=
                                     group_tol) {
                ++stop;
            }
            const auto group_vectors = sector.eigenvectors.middleCols(start, stop - start);
            const Eigen::MatrixXd group_amp =
                group_vectors * coeff.middleRows(start, stop - start);
            Vector phi(dim);
            for (Eigen::Index a = 0; a < dim; ++a) {
                phi(a) = Complex(group_amp(a, 0), group_amp(a, 1));
            }
            state.noalias() += phi * phi.adjoint();
            start = stop;
        }
        sector_states_[k] = std::move(state);
    });
}

SubsystemDensity DiagonalEnsemble::subsystem(const SubsystemIndexer &indexer) const {
    if (indexer.n_sites() != n_sites_) {
        throw std::invalid_argument("DiagonalEnsemble: indexer size mismatch");
    }
    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(indexer.sub_dim()),
                              static_cast<Eigen::Index>(indexer.sub_dim()));
    for (std::size_t k = 0; k < bases_.size(); ++k) {
        const auto &basis = bases_[k];
        // Bucket sector members by environment configuration; only pairs
        // sharing the environment survive the partial trace.
        std::vector<std::vector<std::pair<std::uint32_t, Eigen::Index>>> buckets(
            indexer.env_dim());
        for (std::size_t a = 0; a < basis.size(); ++a) {
            buckets[indexer.env_index(basis[a])].emplace_back(
                indexer.sub_index(basis[a]), static_cast<Eigen::Index>(a));
        }
        const Matrix &state = sector_states_[k];
        for (const auto &bucket : buckets) {
            for (const auto &[sa, ia] : bucket) {
                for (const auto &[sb, ib] : bucket) {
                    rho(sa, sb) += state(ia, ib);
                }
            }
        }
    }
    return SubsystemDensity{indexer.sites(), std::move(rho)};
}

SubsystemDensity DiagonalEnsemble::subsystem(const std::vector<int> &sites) const {
    return subsystem(SubsystemIndexer(n_sites_, sites));
}

SubsystemDensity diagonal_ensemble(const SectorSpectrum &spectrum,
                                   const PureState &psi0,
                                   const std::vector<int> &sites) {
    return DiagonalEnsemble(spectrum, psi0).subsystem(sites);
}

double exact_frobenius(const Matrix &rho_a, const Matrix &rho_de) {
    if (rho_a.rows() != rho_a.cols() || rho_de.rows() != rho_de.cols() ||
        rho_a.rows() != rho_de.rows()) {
        throw std::invalid_argument("exact_frobenius: shape mismatch");
    }
    const double cross = hermitian_inner(rho_a, rho_de);
    const double denom = purity(rho_a) + purity(rho_de);
    if (denom <= 0.0) {
        throw std::invalid_argument("exact_frobenius: non-positive purity sum");
    }
    const double ratio = std::clamp(2.0 * cross / denom, 0.0, 1.0);
    return std::sqrt(1.0 - ratio);
}

} // namespace qmpe

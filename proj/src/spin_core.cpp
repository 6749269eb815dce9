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

#include "qmpe/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmpe {

bool is_normalized(const PureState &psi, double tol) {
    return std::abs(psi.amplitudes.squaredNorm() - 1.0) <= tol;
}

ChargeSectorIndex charge_sectors(int n_sites) {
    if (n_sites < 1 || n_sites > 16) {
        throw std::invalid_argument("charge_sectors: n_sites must be in [1, 16]");
    }
    ChargeSectorIndex out;
    out.n_sites = n_sites;
    out.sectors.assign(static_cast<std::size_t>(n_sites) + 1, {});
    const std::uint64_t dim = 1ULL << n_sites;
    for (std::uint64_t x = 0; x < dim; ++x) {
        out.sectors[static_cast<std::size_t>(up_count(x, n_sites))].push_back(x);
    }
    return out;
}

Matrix symmetrize(const Matrix &rho) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("symmetrize: matrix must be square");
    }
    const Eigen::Index dim = rho.rows();
    Matrix out = rho;
    for (Eigen::Index a = 0; a < dim; ++a) {
        const int wa = hamming_weight(static_cast<std::uint64_t>(a));
        for (Eigen::Index b = 0; b < dim; ++b) {
            if (hamming_weight(static_cast<std::uint64_t>(b)) != wa) {
                out(a, b) = Complex(0.0, 0.0);
            }
        }
    }
    return out;
}

SubsystemDensity symmetrize(const SubsystemDensity &rho) {
    return SubsystemDensity{rho.sites, symmetrize(rho.matrix)};
}

double hermitian_inner(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("hermitian_inner: shape mismatch");
    }
    return a.conjugate().cwiseProduct(b).sum().real();
}

double purity(const Matrix &rho) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("purity: matrix must be square");
    }
    // Tr(rho^2) = sum_ab rho_ab rho_ba; imaginary residue discarded.
    Complex tr(0.0, 0.0);
    for (Eigen::Index a = 0; a < rho.rows(); ++a) {
        for (Eigen::Index b = 0; b < rho.cols(); ++b) {
            tr += rho(a, b) * rho(b, a);
        }
    }
    return tr.real();
}

double exact_ea(const Matrix &rho) {
    const double p2 = purity(rho);
    const double q2 = purity(symmetrize(rho));
    if (p2 <= 0.0 || q2 <= 0.0) {
        throw std::invalid_argument("exact_ea: non-positive purity");
    }
    return std::log(p2) - std::log(q2);
}

SubsystemIndexer::SubsystemIndexer(int n_sites, std::vector<int> sites)
    : n_sites_(n_sites), sites_(std::move(sites)) {
    if (n_sites < 1 || n_sites > 24) {
        throw std::invalid_argument("SubsystemIndexer: n_sites out of range");
    }
    if (sites_.empty() || sites_.size() >= static_cast<std::size_t>(n_sites)) {
        throw std::invalid_argument(
            "SubsystemIndexer: sites must be a strict non-empty subset");
    }
    for (std::size_t j = 0; j < sites_.size(); ++j) {
        if (sites_[j] < 1 || sites_[j] > n_sites) {
            throw std::invalid_argument("SubsystemIndexer: site out of range");
        }
        if (j > 0 && sites_[j] <= sites_[j - 1]) {
            throw std::invalid_argument(
                "SubsystemIndexer: sites must be sorted and duplicate-free");
        }
    }
    std::vector<int> env_sites;
    env_sites.reserve(static_cast<std::size_t>(n_sites) - sites_.size());
    for (int s = 1; s <= n_sites; ++s) {
        if (!std::binary_search(sites_.begin(), sites_.end(), s)) {
            env_sites.push_back(s);
        }
    }
    sub_dim_ = 1ULL << sites_.size();
    env_dim_ = 1ULL << env_sites.size();
    const std::uint64_t dim = 1ULL << n_sites;
    sub_index_.resize(dim);
    env_index_.resize(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        std::uint32_t a = 0;
        for (int s : sites_) {
            a = (a << 1) | static_cast<std::uint32_t>(bit_at(x, s, n_sites));
        }
        std::uint32_t e = 0;
        for (int s : env_sites) {
            e = (e << 1) | static_cast<std::uint32_t>(bit_at(x, s, n_sites));
        }
        sub_index_[x] = a;
        env_index_[x] = e;
    }
}

Matrix SubsystemIndexer::reshape(const Vector &psi) const {
    if (psi.size() != static_cast<Eigen::Index>(sub_dim_ * env_dim_)) {
        throw std::invalid_argument("SubsystemIndexer: amplitude length mismatch");
    }
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(sub_dim_),
                            static_cast<Eigen::Index>(env_dim_));
    for (std::uint64_t x = 0; x < sub_dim_ * env_dim_; ++x) {
        m(sub_index_[x], env_index_[x]) = psi(static_cast<Eigen::Index>(x));
    }
    return m;
}

SubsystemDensity partial_trace(const PureState &psi, const std::vector<int> &sites) {
    const SubsystemIndexer indexer(psi.n_sites, sites);
    const Matrix m = indexer.reshape(psi.amplitudes);
    return SubsystemDensity{indexer.sites(), m * m.adjoint()};
}

Matrix cross_partial_trace(const Vector &psi_m, const Vector &psi_mp,
                           const SubsystemIndexer &indexer) {
    if (psi_m.size() != psi_mp.size()) {
        throw std::invalid_argument("cross_partial_trace: length mismatch");
    }
    return indexer.reshape(psi_m) * indexer.reshape(psi_mp).adjoint();
}

Matrix cross_partial_trace(const Vector &psi_m, const Vector &psi_mp,
                           const std::vector<int> &sites, int n_sites) {
    return cross_partial_trace(psi_m, psi_mp, SubsystemIndexer(n_sites, sites));
}

SubsystemDensity pure_density(const PureState &psi) {
    std::vector<int> sites(static_cast<std::size_t>(psi.n_sites));
    for (int s = 1; s <= psi.n_sites; ++s) {
        sites[static_cast<std::size_t>(s - 1)] = s;
    }
    return SubsystemDensity{std::move(sites),
                            psi.amplitudes * psi.amplitudes.adjoint()};
}

} // namespace qmpe

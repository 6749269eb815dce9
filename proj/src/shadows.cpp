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

#include "qmpe/shadows.hpp"

#include "qmpe/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace qmpe {

namespace {

void check_sites(const RMRecord &record, const std::vector<int> &sites) {
    const int n = static_cast<int>(record.unitaries.size());
    if (sites.empty()) {
        throw std::invalid_argument("shadow: sites must be non-empty");
    }
    for (std::size_t j = 0; j < sites.size(); ++j) {
        if (sites[j] < 1 || sites[j] > n) {
            throw std::invalid_argument("shadow: site out of range");
        }
        if (j > 0 && sites[j] <= sites[j - 1]) {
            throw std::invalid_argument("shadow: sites must be sorted and duplicate-free");
        }
    }
}

/// 3 U^+ |s><s| U - I for one site.
Eigen::Matrix2cd single_site_factor(const Eigen::Matrix2cd &u, int s) {
    const Eigen::Vector2cd row = u.row(s).adjoint(); // U^+ |s>
    Eigen::Matrix2cd f = 3.0 * (row * row.adjoint());
    f(0, 0) -= 1.0;
    f(1, 1) -= 1.0;
    return f;
}

Matrix shadow_matrix(const RMRecord &record, std::uint64_t bits,
                     const std::vector<int> &sites) {
    const int n = static_cast<int>(record.unitaries.size());
    Matrix acc = Matrix::Ones(1, 1);
    // Sites are consumed in descending order so the first (lowest) site of A
    // ends up as the most significant bit of the subsystem basis.
    for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
        const int site = *it;
        const int s = bit_at(bits, site, n);
        const Eigen::Matrix2cd factor =
            single_site_factor(record.unitaries[static_cast<std::size_t>(site - 1)].entries, s);
        Matrix next(acc.rows() * 2, acc.cols() * 2);
        next.topLeftCorner(acc.rows(), acc.cols()) = factor(0, 0) * acc;
        next.topRightCorner(acc.rows(), acc.cols()) = factor(0, 1) * acc;
        next.bottomLeftCorner(acc.rows(), acc.cols()) = factor(1, 0) * acc;
        next.bottomRightCorner(acc.rows(), acc.cols()) = factor(1, 1) * acc;
        acc = std::move(next);
    }
    return acc;
}

/// Unnormalized pair sum sum_{r1 != r2} Tr(rho_r1 rho_r2) via the identity
/// |sum_r rho_r|_F^2 - sum_r |rho_r|_F^2 (all shadows are Hermitian).
double pair_sum(const std::vector<SubsystemShadow> &shadows) {
    Matrix total = Matrix::Zero(shadows.front().matrix.rows(),
                                shadows.front().matrix.cols());
    double diagonal = 0.0;
    for (const auto &shadow : shadows) {
        total += shadow.matrix;
        diagonal += hermitian_inner(shadow.matrix, shadow.matrix);
    }
    return hermitian_inner(total, total) - diagonal;
}

} // namespace

SubsystemShadow shadow_single(const RMRecord &record, int m,
                              const std::vector<int> &sites) {
    check_sites(record, sites);
    if (m < 0 || m >= static_cast<int>(record.bitstrings.size())) {
        throw std::invalid_argument("shadow_single: measurement index out of range");
    }
    return SubsystemShadow{
        sites, shadow_matrix(record, record.bitstrings[static_cast<std::size_t>(m)], sites),
        -1};
}

SubsystemShadow shadow_per_unitary(const RMRecord &record,
                                   const std::vector<int> &sites) {
    check_sites(record, sites);
    if (record.bitstrings.empty()) {
        throw std::invalid_argument("shadow_per_unitary: record has no bitstrings");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(1ULL << sites.size());
    Matrix mean = Matrix::Zero(dim, dim);
    for (std::uint64_t bits : record.bitstrings) {
        mean += shadow_matrix(record, bits, sites);
    }
    mean /= static_cast<double>(record.bitstrings.size());
    return SubsystemShadow{sites, std::move(mean), -1};
}

double purity_ustat(const std::vector<SubsystemShadow> &shadows) {
    const auto n = static_cast<double>(shadows.size());
    if (shadows.size() < 2) {
        throw std::invalid_argument("purity_ustat: need at least two unitaries");
    }
    return pair_sum(shadows) / (n * (n - 1.0));
}

double ea_estimator(const std::vector<SubsystemShadow> &shadows) {
    if (shadows.size() < 2) {
        throw std::invalid_argument("ea_estimator: need at least two unitaries");
    }
    std::vector<SubsystemShadow> symmetrized;
    symmetrized.reserve(shadows.size());
    for (const auto &shadow : shadows) {
        symmetrized.push_back(
            SubsystemShadow{shadow.sites, symmetrize(shadow.matrix), shadow.record_index});
    }
    const double numerator = pair_sum(shadows);
    const double denominator = pair_sum(symmetrized);
    if (numerator <= 0.0 || denominator <= 0.0) {
        throw EstimateUndefinedError("ea_estimator: non-positive purity moment",
                                     numerator, denominator);
    }
    return std::log(numerator) - std::log(denominator);
}

double fd_estimator(const std::vector<SubsystemShadow> &shadows,
                    const SubsystemDensity &rho_de) {
    const auto n = static_cast<double>(shadows.size());
    if (shadows.size() < 2) {
        throw std::invalid_argument("fd_estimator: need at least two unitaries");
    }
    if (rho_de.matrix.rows() != shadows.front().matrix.rows()) {
        throw std::invalid_argument("fd_estimator: reference dimension mismatch");
    }
    double cross = 0.0;
    for (const auto &shadow : shadows) {
        cross += hermitian_inner(shadow.matrix, rho_de.matrix);
    }
    const double beta = n * (n - 1.0);
    const double numerator = 2.0 / n * cross;
    const double denominator = pair_sum(shadows) / beta + purity(rho_de.matrix);
    if (denominator <= 0.0) {
        throw EstimateUndefinedError("fd_estimator: non-positive denominator",
                                     numerator, denominator);
    }
    const double ratio = std::clamp(numerator / denominator, 0.0, 1.0);
    return std::sqrt(1.0 - ratio);
}

} // namespace qmpe

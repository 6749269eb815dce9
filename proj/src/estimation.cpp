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

#include "qmpe/estimation.hpp"

#include "qmpe/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmpe {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// Per-record Frobenius moments for one subsystem, enough to evaluate the
/// full-sample and every leave-one-out U-statistic in O(N_U) total:
///   pair_sum          = <S,S> - sum_r b_r          with S = sum_r rho_r,
///   pair_sum without r = pair_sum - 2 a_r + 2 b_r  with a_r = <S, rho_r>.
struct Moments {
    std::vector<double> a, b;   // <S, rho_r>, <rho_r, rho_r>
    std::vector<double> aq, bq; // symmetrized counterparts
    std::vector<double> c;      // <rho_r, rho_DE>, empty without a reference
    double ss = 0.0;            // <S, S>
    double ssq = 0.0;           // <Sq, Sq>
    double sum_b = 0.0, sum_bq = 0.0, sum_c = 0.0;
    double reference_purity = 0.0;

    double pair_sum(int drop) const {
        const double full = ss - sum_b;
        if (drop < 0) {
            return full;
        }
        const auto r = static_cast<std::size_t>(drop);
        return full - 2.0 * a[r] + 2.0 * b[r];
    }
    double pair_sum_sym(int drop) const {
        const double full = ssq - sum_bq;
        if (drop < 0) {
            return full;
        }
        const auto r = static_cast<std::size_t>(drop);
        return full - 2.0 * aq[r] + 2.0 * bq[r];
    }
};

Moments collect_moments(const RMDataset &dataset, const std::vector<int> &sites,
                        const SubsystemDensity *reference) {
    const std::size_t n_u = dataset.records.size();
    std::vector<Matrix> shadows(n_u);
    parallel_for(n_u, [&](std::size_t r) {
        shadows[r] = shadow_per_unitary(dataset.records[r], sites).matrix;
    });

    Moments m;
    m.a.resize(n_u);
    m.b.resize(n_u);
    m.aq.resize(n_u);
    m.bq.resize(n_u);
    const Eigen::Index dim = shadows.front().rows();
    Matrix total = Matrix::Zero(dim, dim);
    Matrix total_sym = Matrix::Zero(dim, dim);
    for (std::size_t r = 0; r < n_u; ++r) {
        total += shadows[r];
    }
    total_sym = symmetrize(total); // symmetrization commutes with the sum
    for (std::size_t r = 0; r < n_u; ++r) {
        const Matrix sym = symmetrize(shadows[r]);
        m.b[r] = hermitian_inner(shadows[r], shadows[r]);
        m.bq[r] = hermitian_inner(sym, sym);
        m.a[r] = hermitian_inner(total, shadows[r]);
        m.aq[r] = hermitian_inner(total_sym, sym);
        m.sum_b += m.b[r];
        m.sum_bq += m.bq[r];
    }
    m.ss = hermitian_inner(total, total);
    m.ssq = hermitian_inner(total_sym, total_sym);
    if (reference != nullptr) {
        if (reference->matrix.rows() != dim) {
            throw std::invalid_argument("estimate_dataset: reference dimension mismatch");
        }
        m.c.resize(n_u);
        for (std::size_t r = 0; r < n_u; ++r) {
            m.c[r] = hermitian_inner(shadows[r], reference->matrix);
            m.sum_c += m.c[r];
        }
        m.reference_purity = purity(reference->matrix);
    }
    return m;
}

/// EA from the pair sums; NaN when either moment is non-positive.
double ea_from_moments(const Moments &m, int drop) {
    const double numerator = m.pair_sum(drop);
    const double denominator = m.pair_sum_sym(drop);
    if (numerator <= 0.0 || denominator <= 0.0) {
        return kNan;
    }
    return std::log(numerator) - std::log(denominator);
}

/// FD from the moments; NaN when the denominator is non-positive.
double fd_from_moments(const Moments &m, int n_u, int drop) {
    const double n = drop < 0 ? n_u : n_u - 1;
    const double beta = n * (n - 1.0);
    const double cross =
        drop < 0 ? m.sum_c : m.sum_c - m.c[static_cast<std::size_t>(drop)];
    const double denominator = m.pair_sum(drop) / beta + m.reference_purity;
    if (denominator <= 0.0) {
        return kNan;
    }
    const double ratio = std::clamp(2.0 / n * cross / denominator, 0.0, 1.0);
    return std::sqrt(1.0 - ratio);
}

/// Jackknife sigma over the defined leave-one-out replicas.
double loo_sigma(const std::vector<double> &loo) {
    double mean = 0.0;
    int count = 0;
    for (double v : loo) {
        if (std::isfinite(v)) {
            mean += v;
            ++count;
        }
    }
    if (count < 2) {
        return kNan;
    }
    mean /= count;
    double ss = 0.0;
    for (double v : loo) {
        if (std::isfinite(v)) {
            ss += (v - mean) * (v - mean);
        }
    }
    return std::sqrt((static_cast<double>(count) - 1.0) / count * ss);
}

} // namespace

DatasetEstimate estimate_dataset(const RMDataset &dataset,
                                 const std::vector<std::vector<int>> &subsystems,
                                 const std::vector<const SubsystemDensity *> &references) {
    const int n_u = static_cast<int>(dataset.records.size());
    if (n_u < 3) {
        throw std::invalid_argument("estimate_dataset: need at least three unitaries");
    }
    if (subsystems.empty()) {
        throw std::invalid_argument("estimate_dataset: no subsystems given");
    }
    if (!references.empty() && references.size() != subsystems.size()) {
        throw std::invalid_argument("estimate_dataset: one reference per subsystem");
    }

    DatasetEstimate out;
    out.header = dataset.header;
    const std::size_t n_subsystems = subsystems.size();
    // Leave-one-out tables feeding the joint subsystem average.
    std::vector<std::vector<double>> ea_loo(n_subsystems);
    std::vector<std::vector<double>> fd_loo(n_subsystems);
    std::vector<double> ea_full(n_subsystems, kNan);
    std::vector<double> fd_full(n_subsystems, kNan);

    for (std::size_t s = 0; s < n_subsystems; ++s) {
        const SubsystemDensity *reference =
            references.empty() ? nullptr : references[s];
        const Moments m = collect_moments(dataset, subsystems[s], reference);

        SubsystemEstimate estimate;
        estimate.sites = subsystems[s];
        ea_full[s] = ea_from_moments(m, -1);
        ea_loo[s].resize(static_cast<std::size_t>(n_u));
        for (int r = 0; r < n_u; ++r) {
            ea_loo[s][static_cast<std::size_t>(r)] = ea_from_moments(m, r);
        }
        estimate.ea = ea_full[s];
        estimate.ea_err = loo_sigma(ea_loo[s]);
        if (!std::isfinite(estimate.ea)) {
            estimate.n_excluded += 1;
            estimate.ea_err = kNan;
        }
        if (reference != nullptr) {
            fd_full[s] = fd_from_moments(m, n_u, -1);
            fd_loo[s].resize(static_cast<std::size_t>(n_u));
            for (int r = 0; r < n_u; ++r) {
                fd_loo[s][static_cast<std::size_t>(r)] = fd_from_moments(m, n_u, r);
            }
            estimate.fd = fd_full[s];
            estimate.fd_err = loo_sigma(fd_loo[s]);
            if (!std::isfinite(estimate.fd)) {
                estimate.n_excluded += 1;
                estimate.fd_err = kNan;
            }
        } else {
            estimate.fd = kNan;
            estimate.fd_err = kNan;
        }
        out.per_subsystem.push_back(std::move(estimate));
    }

    // Subsystem average: drop each unitary jointly across subsystems;
    // missing component estimates are excluded pairwise.
    const auto average_defined = [](const std::vector<double> &values) {
        double sum = 0.0;
        int count = 0;
        for (double v : values) {
            if (std::isfinite(v)) {
                sum += v;
                ++count;
            }
        }
        return count > 0 ? sum / count : kNan;
    };
    SubsystemEstimate averaged;
    averaged.ea = average_defined(ea_full);
    for (double v : ea_full) {
        if (!std::isfinite(v)) {
            averaged.n_excluded += 1;
        }
    }
    std::vector<double> joint(static_cast<std::size_t>(n_u));
    for (int r = 0; r < n_u; ++r) {
        std::vector<double> per_site(n_subsystems);
        for (std::size_t s = 0; s < n_subsystems; ++s) {
            per_site[s] = ea_loo[s][static_cast<std::size_t>(r)];
        }
        joint[static_cast<std::size_t>(r)] = average_defined(per_site);
    }
    averaged.ea_err = std::isfinite(averaged.ea) ? loo_sigma(joint) : kNan;
    if (!references.empty()) {
        averaged.fd = average_defined(fd_full);
        for (int r = 0; r < n_u; ++r) {
            std::vector<double> per_site(n_subsystems, kNan);
            for (std::size_t s = 0; s < n_subsystems; ++s) {
                if (!fd_loo[s].empty()) {
                    per_site[s] = fd_loo[s][static_cast<std::size_t>(r)];
                }
            }
            joint[static_cast<std::size_t>(r)] = average_defined(per_site);
        }
        averaged.fd_err = std::isfinite(averaged.fd) ? loo_sigma(joint) : kNan;
        for (double v : fd_full) {
            if (!std::isfinite(v)) {
                averaged.n_excluded += 1;
            }
        }
    } else {
        averaged.fd = kNan;
        averaged.fd_err = kNan;
    }
    out.averaged = std::move(averaged);
    return out;
}

} // namespace qmpe

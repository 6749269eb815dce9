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

#include "qmpe/rm_protocol.hpp"

#include "qmpe/parallel.hpp"
#include "qmpe/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmpe {

namespace {

// Substream purpose tags for per-record RNG splitting.
constexpr std::uint64_t kTagUnitaries = 0x75;
constexpr std::uint64_t kTagShots = 0x73;

} // namespace

Eigen::Matrix2cd sample_cue(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Matrix2cd z;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = Complex(re, im);
        }
    }
    const Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
    Eigen::Matrix2cd q = qr.householderQ();
    const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 2; ++c) {
        const Complex d = r(c, c);
        const double mag = std::abs(d);
        q.col(c) *= (mag > 0.0 ? d / mag : Complex(1.0, 0.0));
    }
    return q;
}

Vector apply_local_unitaries(const Vector &psi, int n_sites,
                             const std::vector<Eigen::Matrix2cd> &unitaries) {
    if (unitaries.size() != static_cast<std::size_t>(n_sites)) {
        throw std::invalid_argument("apply_local_unitaries: need one unitary per site");
    }
    if (psi.size() != static_cast<Eigen::Index>(1ULL << n_sites)) {
        throw std::invalid_argument("apply_local_unitaries: length mismatch");
    }
    Vector out = psi;
    for (int site = 1; site <= n_sites; ++site) {
        const Eigen::Matrix2cd &u = unitaries[static_cast<std::size_t>(site - 1)];
        const std::uint64_t stride = 1ULL << (n_sites - site);
        const std::uint64_t dim = static_cast<std::uint64_t>(out.size());
        for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                const Eigen::Index i0 = static_cast<Eigen::Index>(base + off);
                const Eigen::Index i1 = static_cast<Eigen::Index>(base + off + stride);
                const Complex a0 = out(i0);
                const Complex a1 = out(i1);
                out(i0) = u(0, 0) * a0 + u(0, 1) * a1;
                out(i1) = u(1, 0) * a0 + u(1, 1) * a1;
            }
        }
    }
    return out;
}

Eigen::VectorXd measurement_distribution(const std::vector<Vector> &components,
                                         int n_sites, double gamma, double t,
                                         const std::vector<Eigen::Matrix2cd> &unitaries) {
    if (components.size() != static_cast<std::size_t>(n_sites) + 1) {
        throw std::invalid_argument("measurement_distribution: component count mismatch");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(1ULL << n_sites);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
    if (gamma * t == 0.0) {
        Vector total = Vector::Zero(dim);
        for (const auto &component : components) {
            total += component;
        }
        const Vector rotated = apply_local_unitaries(total, n_sites, unitaries);
        for (Eigen::Index s = 0; s < dim; ++s) {
            p(s) = std::norm(rotated(s));
        }
    } else {
        std::vector<Vector> rotated;
        rotated.reserve(components.size());
        for (const auto &component : components) {
            rotated.push_back(apply_local_unitaries(component, n_sites, unitaries));
        }
        for (int k = 0; k <= n_sites; ++k) {
            for (Eigen::Index s = 0; s < dim; ++s) {
                p(s) += std::norm(rotated[static_cast<std::size_t>(k)](s));
            }
            for (int kp = k + 1; kp <= n_sites; ++kp) {
                const double w = std::exp(-2.0 * gamma * t *
                                          static_cast<double>((k - kp) * (k - kp)));
                if (w == 0.0) {
                    continue;
                }
                for (Eigen::Index s = 0; s < dim; ++s) {
                    p(s) += 2.0 * w *
                            (rotated[static_cast<std::size_t>(k)](s) *
                             std::conj(rotated[static_cast<std::size_t>(kp)](s)))
                                .real();
                }
            }
        }
    }
    const double total_probability = p.sum();
    if (std::abs(total_probability - 1.0) > 1e-10) {
        throw std::runtime_error("measurement_distribution: probabilities do not sum to 1");
    }
    return p;
}

Eigen::VectorXd measurement_distribution(const PureState &psi_t, double gamma,
                                         double t,
                                         const std::vector<Eigen::Matrix2cd> &unitaries) {
    return measurement_distribution(sector_components(psi_t), psi_t.n_sites,
                                    gamma, t, unitaries);
}

std::vector<std::uint64_t> sample_bitstrings(const Eigen::VectorXd &distribution,
                                             int n_m, std::mt19937_64 &rng) {
    if (n_m < 0) {
        throw std::invalid_argument("sample_bitstrings: n_m must be >= 0");
    }
    if (std::abs(distribution.sum() - 1.0) > 1e-8 ||
        distribution.minCoeff() < -1e-12) {
        throw std::invalid_argument("sample_bitstrings: distribution not normalized");
    }
    std::vector<double> cumulative(static_cast<std::size_t>(distribution.size()));
    double acc = 0.0;
    for (Eigen::Index s = 0; s < distribution.size(); ++s) {
        acc += std::max(distribution(s), 0.0);
        cumulative[static_cast<std::size_t>(s)] = acc;
    }
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(n_m));
    for (auto &bits : out) {
        const double u = uniform(rng) * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        bits = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                     static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
    }
    return out;
}

RMDataset run_rm_experiment(const QuenchScenario &scenario, double t, int n_u,
                            int n_m, std::uint64_t seed,
                            const SectorSpectrum *spectrum) {
    validate_scenario(scenario);
    if (n_u < 1 || n_m < 1) {
        throw std::invalid_argument("run_rm_experiment: n_u and n_m must be >= 1");
    }
    const int n = scenario.n_sites;
    PureState psi = prepare_tilted(n, scenario.theta);
    SectorSpectrum local;
    if (scenario.spec) {
        if (spectrum == nullptr) {
            local = sector_eigendecomposition(*scenario.spec);
            spectrum = &local;
        }
        psi = scenario.echo ? echo_evolve(*spectrum, psi, t)
                            : evolve_pure(*spectrum, psi, t);
    }
    const std::vector<Vector> components = sector_components(psi);

    RMDataset dataset;
    dataset.header = RMHeader{n,   scenario.theta, t, scenario.label, scenario.gamma,
                              seed, n_u,           n_m};
    dataset.records.resize(static_cast<std::size_t>(n_u));
    parallel_for(static_cast<std::size_t>(n_u), [&](std::size_t r) {
        auto unitary_rng = substream(seed, {r, kTagUnitaries});
        RMRecord record;
        record.unitaries.reserve(static_cast<std::size_t>(n));
        std::vector<Eigen::Matrix2cd> us;
        us.reserve(static_cast<std::size_t>(n));
        for (int site = 1; site <= n; ++site) {
            const Eigen::Matrix2cd u = sample_cue(unitary_rng);
            record.unitaries.push_back(LocalUnitary{site, u});
            us.push_back(u);
        }
        const Eigen::VectorXd p =
            measurement_distribution(components, n, scenario.gamma, t, us);
        auto shot_rng = substream(seed, {r, kTagShots});
        record.bitstrings = sample_bitstrings(p, n_m, shot_rng);
        dataset.records[r] = std::move(record);
    });
    return dataset;
}

} // namespace qmpe

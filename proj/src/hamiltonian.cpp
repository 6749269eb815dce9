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

#include "qmpe/hamiltonian.hpp"

#include "qmpe/parallel.hpp"
#include "qmpe/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qmpe {

namespace {

void check_spec(const HamiltonianSpec &spec) {
    if (spec.n_sites < 2) {
        throw std::invalid_argument("HamiltonianSpec: n_sites must be >= 2");
    }
    if (spec.alpha < 0.0) {
        throw std::invalid_argument("HamiltonianSpec: alpha must be >= 0");
    }
    if (spec.fields.size() != static_cast<std::size_t>(spec.n_sites)) {
        throw std::invalid_argument("HamiltonianSpec: fields length mismatch");
    }
}

/// Sum_i h_i z_i for a basis index (z = +1 for an up spin, bit value 0).
double diagonal_field(const HamiltonianSpec &spec, std::uint64_t x) {
    double d = 0.0;
    for (int s = 1; s <= spec.n_sites; ++s) {
        const double z = bit_at(x, s, spec.n_sites) == 0 ? 1.0 : -1.0;
        d += spec.fields[static_cast<std::size_t>(s - 1)] * z;
    }
    return d;
}

/// Flip-flop amplitude between two equal-weight indices differing in
/// exactly two bits; 0 otherwise.
double hopping(const HamiltonianSpec &spec, std::uint64_t x, std::uint64_t y) {
    const std::uint64_t diff = x ^ y;
    if (std::popcount(diff) != 2) {
        return 0.0;
    }
    const int hi = std::countl_zero(diff) - (64 - spec.n_sites) + 1; // site of MSB
    const int lo = spec.n_sites - std::countr_zero(diff);            // site of LSB
    return spec.j0 / std::pow(static_cast<double>(std::abs(lo - hi)), spec.alpha);
}

} // namespace

HamiltonianSpec build_xy(int n_sites, double j0, double alpha) {
    HamiltonianSpec spec{n_sites, j0, alpha,
                         std::vector<double>(static_cast<std::size_t>(
                                                 n_sites < 0 ? 0 : n_sites),
                                             0.0)};
    check_spec(spec);
    return spec;
}

HamiltonianSpec build_disordered(int n_sites, double j0, double alpha,
                                 std::vector<double> h) {
    HamiltonianSpec spec{n_sites, j0, alpha, std::move(h)};
    check_spec(spec);
    return spec;
}

std::vector<double> sample_disorder(int n_sites, double w, double j0,
                                    std::mt19937_64 &rng) {
    if (w <= 0.0) {
        throw std::invalid_argument("sample_disorder: w must be > 0");
    }
    std::uniform_real_distribution<double> uniform(0.0, w * j0);
    std::vector<double> h(static_cast<std::size_t>(n_sites));
    for (auto &hi : h) {
        hi = uniform(rng);
    }
    return h;
}

std::vector<double> sample_disorder(int n_sites, double w, double j0,
                                    std::uint64_t seed) {
    auto rng = substream(seed, {0x4d15u});
    return sample_disorder(n_sites, w, j0, rng);
}

Eigen::MatrixXd sector_block(const HamiltonianSpec &spec,
                             const std::vector<std::uint64_t> &basis) {
    check_spec(spec);
    const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd block(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        block(a, a) = diagonal_field(spec, basis[static_cast<std::size_t>(a)]);
        for (Eigen::Index b = a + 1; b < dim; ++b) {
            const double v = hopping(spec, basis[static_cast<std::size_t>(a)],
                                     basis[static_cast<std::size_t>(b)]);
            block(a, b) = v;
            block(b, a) = v;
        }
    }
    return block;
}

Eigen::MatrixXd dense_matrix(const HamiltonianSpec &spec) {
    check_spec(spec);
    if (spec.n_sites > 12) {
        throw std::invalid_argument("dense_matrix: n_sites too large for a dense build");
    }
    std::vector<std::uint64_t> all(1ULL << spec.n_sites);
    for (std::uint64_t x = 0; x < all.size(); ++x) {
        all[x] = x;
    }
    return sector_block(spec, all);
}

SectorSpectrum sector_eigendecomposition(const HamiltonianSpec &spec) {
    check_spec(spec);
    if (spec.n_sites > 16) {
        throw std::invalid_argument("sector_eigendecomposition: n_sites must be <= 16");
    }
    const ChargeSectorIndex sectors = charge_sectors(spec.n_sites);
    SectorSpectrum out;
    out.spec = spec;
    out.sectors.resize(sectors.sectors.size());
    parallel_for(sectors.sectors.size(), [&](std::size_t k) {
        auto &sector = out.sectors[k];
        sector.basis = sectors.sectors[k];
        const Eigen::MatrixXd block = sector_block(spec, sector.basis);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("sector_eigendecomposition: solver failed");
        }
        sector.eigenvalues = solver.eigenvalues();
        sector.eigenvectors = solver.eigenvectors();
    });
    return out;
}

} // namespace qmpe

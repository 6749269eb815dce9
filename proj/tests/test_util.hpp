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

#include <cmath>
#include <random>

namespace qmpe::test {

inline constexpr double kPi = 3.14159265358979323846;

/// Random PSD unit-trace density matrix (Wishart construction).
inline Matrix random_density(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            g(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

/// Random normalized pure state on n sites.
inline PureState random_state(int n_sites, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    PureState psi;
    psi.n_sites = n_sites;
    psi.amplitudes.resize(static_cast<Eigen::Index>(1ULL << n_sites));
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
        psi.amplitudes(i) = Complex(normal(rng), normal(rng));
    }
    psi.amplitudes /= psi.amplitudes.norm();
    return psi;
}

/// Independent oracle for tilted product states:
/// EA = -ln sum_k [C(n_a, k) p^k (1-p)^(n_a-k)]^2 with p = sin^2(theta/2).
inline double ea_tilted_closed_form(int n_a, double theta) {
    const double p = std::sin(0.5 * theta) * std::sin(0.5 * theta);
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n_a; ++k) {
        const double weight =
            binom * std::pow(p, k) * std::pow(1.0 - p, n_a - k);
        sum += weight * weight;
        binom = binom * (n_a - k) / (k + 1);
    }
    return -std::log(sum);
}

inline double max_abs_diff(const Matrix &a, const Matrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace qmpe::test

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

#include "qmpe/dynamics.hpp"

#include "qmpe/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace qmpe {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_state(const PureState &psi) {
    if (psi.n_sites < 1 ||
        psi.amplitudes.size() != static_cast<Eigen::Index>(1ULL << psi.n_sites)) {
        throw std::invalid_argument("PureState: amplitude length mismatch");
    }
}

} // namespace

void validate_scenario(const QuenchScenario &scenario) {
    if (scenario.n_sites < 1) {
        throw std::invalid_argument("QuenchScenario: n_sites must be >= 1");
    }
    if (scenario.spec && scenario.spec->n_sites != scenario.n_sites) {
        throw std::invalid_argument("QuenchScenario: spec/n_sites mismatch");
    }
    if (scenario.gamma < 0.0) {
        throw std::invalid_argument("QuenchScenario: gamma must be >= 0");
    }
    if (scenario.theta < 0.0 || scenario.theta > kPi) {
        throw std::invalid_argument("QuenchScenario: theta must be in [0, pi]");
    }
    for (double t : scenario.times) {
        if (t < 0.0 || !std::isfinite(t)) {
            throw std::invalid_argument("QuenchScenario: times must be >= 0");
        }
    }
}

PureState prepare_tilted(int n_sites, double theta) {
    if (n_sites < 1 || n_sites > 24) {
        throw std::invalid_argument("prepare_tilted: n_sites out of range");
    }
    const double up = std::sin(0.5 * theta);
    const double down = std::cos(0.5 * theta);
    std::vector<double> up_pow(static_cast<std::size_t>(n_sites) + 1, 1.0);
    std::vector<double> down_pow(static_cast<std::size_t>(n_sites) + 1, 1.0);
    for (int k = 1; k <= n_sites; ++k) {
        up_pow[static_cast<std::size_t>(k)] = up_pow[static_cast<std::size_t>(k - 1)] * up;
        down_pow[static_cast<std::size_t>(k)] =
            down_pow[static_cast<std::size_t>(k - 1)] * down;
    }
    PureState psi;
    psi.n_sites = n_sites;
    psi.amplitudes.resize(static_cast<Eigen::Index>(1ULL << n_sites));
    for (std::uint64_t x = 0; x < (1ULL << n_sites); ++x) {
        const int k = up_count(x, n_sites);
        psi.amplitudes(static_cast<Eigen::Index>(x)) =
            Complex(up_pow[static_cast<std::size_t>(k)] *
                        down_pow[static_cast<std::size_t>(n_sites - k)],
                    0.0);
    }
    return psi;
}

PureState evolve_pure(const SectorSpectrum &spectrum, const PureState &psi0,
                      double t) {
    check_state(psi0);
    if (spectrum.n_sites() != psi0.n_sites) {
        throw std::invalid_argument("evolve_pure: spectrum/state size mismatch");
    }
    PureState out;
    out.n_sites = psi0.n_sites;
    out.amplitudes = Vector::Zero(psi0.amplitudes.size());
    for (const auto &sector : spectrum.sectors) {
        const Eigen::Index dim = static_cast<Eigen::Index>(sector.basis.size());
        // Complex sector amplitudes as two real columns so the real
        // eigenvector matrix multiplies without casts.
        Eigen::MatrixXd phase_in(dim, 2);
        for (Eigen::Index a = 0; a < dim; ++a) {
            const Complex amp =
                psi0.amplitudes(static_cast<Eigen::Index>(sector.basis[static_cast<std::size_t>(a)]));
            phase_in(a, 0) = amp.real();
            phase_in(a, 1) = amp.imag();
        }
        Eigen::MatrixXd coeff = sector.eigenvectors.transpose() * phase_in;
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double phi = sector.eigenvalues(j) * t;
            const double c = std::cos(phi);
            const double s = std::sin(phi);
            // (re + i im) * exp(-i phi)
            const double re = coeff(j, 0) * c + coeff(j, 1) * s;
            const double im = coeff(j, 1) * c - coeff(j, 0) * s;
            coeff(j, 0) = re;
            coeff(j, 1) = im;
        }
        const Eigen::MatrixXd rotated = sector.eigenvectors * coeff;
        for (Eigen::Index a = 0; a < dim; ++a) {
            out.amplitudes(static_cast<Eigen::Index>(sector.basis[static_cast<std::size_t>(a)])) =
                Complex(rotated(a, 0), rotated(a, 1));
        }
    }
    return out;
}

PureState echo_evolve(const SectorSpectrum &spectrum, const PureState &psi0,
                      double t) {
    PureState half = evolve_pure(spectrum, psi0, 0.5 * t);
    // Global X pulse: complements every bit.
    const std::uint64_t mask = (1ULL << half.n_sites) - 1;
    PureState flipped;
    flipped.n_sites = half.n_sites;
    flipped.amplitudes.resize(half.amplitudes.size());
    for (std::uint64_t x = 0; x <= mask; ++x) {
        flipped.amplitudes(static_cast<Eigen::Index>(x ^ mask)) =
            half.amplitudes(static_cast<Eigen::Index>(x));
    }
    return evolve_pure(spectrum, flipped, 0.5 * t);
}

std::vector<Vector> sector_components(const PureState &psi) {
    check_state(psi);
    std::vector<Vector> components(static_cast<std::size_t>(psi.n_sites) + 1,
                                   Vector::Zero(psi.amplitudes.size()));
    for (std::uint64_t x = 0; x < (1ULL << psi.n_sites); ++x) {
        const int k = up_count(x, psi.n_sites);
        components[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(x)) =
            psi.amplitudes(static_cast<Eigen::Index>(x));
    }
    return components;
}

SubsystemDensity dephased_subsystem_state(const std::vector<Vector> &components,
                                          double gamma, double t,
                                          const SubsystemIndexer &indexer) {
    if (gamma * t < 0.0) {
        throw std::invalid_argument("dephased_subsystem_state: gamma*t must be >= 0");
    }
    const int n = static_cast<int>(components.size()) - 1;
    if (n != indexer.n_sites()) {
        throw std::invalid_argument("dephased_subsystem_state: component count mismatch");
    }
    // Reshape each sector component once; pair terms are small GEMMs.
    std::vector<Matrix> reshaped;
    reshaped.reserve(components.size());
    for (const auto &component : components) {
        reshaped.push_back(indexer.reshape(component));
    }
    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(indexer.sub_dim()),
                              static_cast<Eigen::Index>(indexer.sub_dim()));
    for (int k = 0; k <= n; ++k) {
        rho.noalias() += reshaped[static_cast<std::size_t>(k)] *
                         reshaped[static_cast<std::size_t>(k)].adjoint();
        for (int kp = k + 1; kp <= n; ++kp) {
            const double w =
                std::exp(-2.0 * gamma * t * static_cast<double>((k - kp) * (k - kp)));
            if (w == 0.0) {
                continue;
            }
            const Matrix cross = reshaped[static_cast<std::size_t>(k)] *
                                 reshaped[static_cast<std::size_t>(kp)].adjoint();
            rho.noalias() += w * cross;
            rho.noalias() += w * cross.adjoint();
        }
    }
    return SubsystemDensity{indexer.sites(), std::move(rho)};
}

SubsystemDensity dephased_subsystem_state(const PureState &psi_t, double gamma,
                                          double t, const std::vector<int> &sites) {
    check_state(psi_t);
    return dephased_subsystem_state(sector_components(psi_t), gamma, t,
                                    SubsystemIndexer(psi_t.n_sites, sites));
}

SubsystemDensity pure_dephasing_subsystem(const PureState &psi0, double gamma,
                                          double t, const std::vector<int> &sites) {
    return dephased_subsystem_state(psi0, gamma, t, sites);
}

Matrix lindblad_oracle(const HamiltonianSpec &spec, double gamma,
                       const PureState &psi0, double t, int n_steps) {
    check_state(psi0);
    if (spec.n_sites != psi0.n_sites) {
        throw std::invalid_argument("lindblad_oracle: spec/state size mismatch");
    }
    if (spec.n_sites > 6) {
        throw std::invalid_argument("lindblad_oracle: n_sites must be <= 6");
    }
    if (n_steps < 1) {
        throw std::invalid_argument("lindblad_oracle: n_steps must be >= 1");
    }
    const Matrix h = dense_matrix(spec).cast<Complex>();
    const double dt = t / n_steps;
    const double h_norm = h.cwiseAbs().rowwise().sum().maxCoeff();
    if (h_norm * dt > 0.1) {
        throw ConfigError("lindblad_oracle: step too coarse (|H| dt > 0.1)");
    }
    const Eigen::Index dim = h.rows();
    // Dissipator is diagonal in the basis-pair labels:
    // entry (x, y) decays at rate gamma/2 * (z_x - z_y)^2 with z = N - 2w.
    Eigen::MatrixXd decay(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        const int zx = spec.n_sites - 2 * hamming_weight(static_cast<std::uint64_t>(x));
        for (Eigen::Index y = 0; y < dim; ++y) {
            const int zy =
                spec.n_sites - 2 * hamming_weight(static_cast<std::uint64_t>(y));
            decay(x, y) = 0.5 * gamma * static_cast<double>((zx - zy) * (zx - zy));
        }
    }
    if (decay.maxCoeff() * dt > 1.0) {
        throw ConfigError("lindblad_oracle: step too coarse for the dissipator");
    }
    const auto rhs = [&](const Matrix &m) -> Matrix {
        Matrix commutator = h * m;
        commutator.noalias() -= m * h;
        return Complex(0.0, -1.0) * commutator - decay.cwiseProduct(m);
    };
    Matrix rho = psi0.amplitudes * psi0.amplitudes.adjoint();
    for (int step = 0; step < n_steps; ++step) {
        const Matrix k1 = rhs(rho);
        const Matrix k2 = rhs(rho + (0.5 * dt) * k1);
        const Matrix k3 = rhs(rho + (0.5 * dt) * k2);
        const Matrix k4 = rhs(rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const double trace_drift = std::abs(rho.trace().real() - 1.0) +
                               std::abs(rho.trace().imag());
    if (trace_drift > 1e-8) {
        throw std::runtime_error("lindblad_oracle: trace drift exceeds 1e-8; "
                                 "increase n_steps");
    }
    return rho;
}

} // namespace qmpe

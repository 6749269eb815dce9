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

#include "qmpe/dynamics.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace qmpe;
using qmpe::test::kPi;

TEST_CASE("basis convention round trip and charge") {
    for (int n : {1, 3, 8}) {
        for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
            std::uint64_t rebuilt = 0;
            for (int s = 1; s <= n; ++s) {
                rebuilt = (rebuilt << 1) | static_cast<std::uint64_t>(bit_at(x, s, n));
            }
            CHECK(rebuilt == x);
            CHECK(charge_of(x, n) == 0.5 * (n - 2 * hamming_weight(x)));
        }
    }
}

TEST_CASE("charge_sectors partitions the basis") {
    SUBCASE("single spin") {
        const auto idx = charge_sectors(1);
        REQUIRE(idx.sectors.size() == 2);
        CHECK(idx.sectors[0] == std::vector<std::uint64_t>{1}); // down, q = -1/2
        CHECK(idx.sectors[1] == std::vector<std::uint64_t>{0}); // up, q = +1/2
        CHECK(idx.charge(0) == -0.5);
        CHECK(idx.charge(1) == +0.5);
    }
    SUBCASE("binomial sector sizes") {
        const auto two = charge_sectors(2);
        CHECK(two.sectors[0].size() == 1);
        CHECK(two.sectors[1].size() == 2);
        CHECK(two.sectors[2].size() == 1);
        const auto four = charge_sectors(4);
        const std::vector<std::size_t> expected{1, 4, 6, 4, 1};
        for (std::size_t k = 0; k < expected.size(); ++k) {
            CHECK(four.sectors[k].size() == expected[k]);
        }
        std::size_t total = 0;
        for (const auto &sector : four.sectors) {
            total += sector.size();
        }
        CHECK(total == 16);
    }
    SUBCASE("size out of range") {
        CHECK_THROWS_AS(charge_sectors(0), std::invalid_argument);
        CHECK_THROWS_AS(charge_sectors(17), std::invalid_argument);
    }
}

TEST_CASE("symmetrize basics") {
    SUBCASE("diagonal matrices are fixed points") {
        Matrix rho = Matrix::Zero(4, 4);
        rho(0, 0) = 0.1;
        rho(1, 1) = 0.4;
        rho(2, 2) = 0.3;
        rho(3, 3) = 0.2;
        CHECK(test::max_abs_diff(symmetrize(rho), rho) == 0.0);
    }
    SUBCASE("single-qubit coherence is removed") {
        Matrix rho(2, 2);
        rho << 0.5, 0.5, 0.5, 0.5; // (I + sigma_x) / 2
        const Matrix sym = symmetrize(rho);
        CHECK(sym(0, 1) == Complex(0, 0));
        CHECK(sym(1, 0) == Complex(0, 0));
        CHECK(sym(0, 0) == Complex(0.5, 0));
    }
    SUBCASE("two-qubit plus state; brute-force sector weights") {
        Vector psi(4);
        psi << 0.5, 0.5, 0.5, 0.5;
        const Matrix rho = psi * psi.adjoint();
        // Sector weights (1/4, 1/2, 1/4); q = 0 block is rank one with trace
        // 1/2, so Tr rhoQ^2 = 1/16 + 1/4 + 1/16 = 3/8.
        CHECK(purity(symmetrize(rho)) == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
    }
    SUBCASE("non-square input") {
        CHECK_THROWS_AS(symmetrize(Matrix::Zero(2, 3)), std::invalid_argument);
    }
}

TEST_CASE("symmetrize is a trace-preserving projector") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n_a = 1 + static_cast<int>(rng() % 3);
        const Matrix rho = test::random_density(1 << n_a, rng);
        const Matrix once = symmetrize(rho);
        const Matrix twice = symmetrize(once);
        CHECK(test::max_abs_diff(once, twice) == 0.0);
        CHECK(std::abs((once.trace() - rho.trace()).real()) < 1e-12);
        CHECK(std::abs((once.trace() - rho.trace()).imag()) < 1e-12);
    }
}

TEST_CASE("purity values") {
    Matrix pure = Matrix::Zero(4, 4);
    pure(2, 2) = 1.0;
    CHECK(purity(pure) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(purity(Matrix::Identity(16, 16) / 16.0) ==
          doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    Matrix mixed = Matrix::Zero(2, 2);
    mixed(0, 0) = 0.75;
    mixed(1, 1) = 0.25;
    CHECK(purity(mixed) == doctest::Approx(0.625).epsilon(1e-14));
}

TEST_CASE("exact_ea on tilted product states") {
    // Frozen from the independent closed form -ln sum_k [C(4,k) p^k (1-p)^(4-k)]^2.
    const double expected_half_pi = 1.2966822024379072;
    const double expected_02_pi = 0.63500371294528895;
    for (auto [theta, expected] :
         {std::pair{0.5 * kPi, expected_half_pi}, std::pair{0.2 * kPi, expected_02_pi}}) {
        const PureState psi = prepare_tilted(4, theta);
        const SubsystemDensity rho = pure_density(psi);
        CHECK(exact_ea(rho) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(exact_ea(rho) ==
              doctest::Approx(test::ea_tilted_closed_form(4, theta)).epsilon(1e-10));
    }
    SUBCASE("block-diagonal states have EA zero") {
        std::mt19937_64 rng(11);
        const Matrix rho = symmetrize(test::random_density(8, rng));
        CHECK(std::abs(exact_ea(rho)) < 1e-10);
    }
}

TEST_CASE("closed form matches the matrix computation across sizes and angles") {
    for (int n_a : {2, 3, 4}) {
        for (int step = 1; step <= 9; ++step) {
            const double theta = 0.1 * step * kPi;
            const PureState psi = prepare_tilted(n_a, theta);
            CHECK(exact_ea(pure_density(psi)) ==
                  doctest::Approx(test::ea_tilted_closed_form(n_a, theta))
                      .epsilon(1e-10));
        }
    }
}

TEST_CASE("EA is non-negative and detects symmetry breaking") {
    std::mt19937_64 rng(23);
    int asymmetric_seen = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n_a = 1 + static_cast<int>(rng() % 3);
        const Matrix rho = test::random_density(1 << n_a, rng);
        const double ea = exact_ea(rho);
        CHECK(ea >= -1e-10);
        CHECK(purity(symmetrize(rho)) <= purity(rho) + 1e-12);
        const double off_block = test::max_abs_diff(rho, symmetrize(rho));
        if (ea < 1e-10) {
            CHECK(off_block < 1e-8);
        }
        if (off_block < 1e-8) {
            CHECK(ea < 1e-10);
        } else {
            ++asymmetric_seen;
            CHECK(ea > 0.0);
        }
    }
    CHECK(asymmetric_seen > 900); // random densities are generically asymmetric
}

TEST_CASE("partial_trace basics") {
    SUBCASE("product state stays pure") {
        const PureState psi = prepare_tilted(5, 0.3 * kPi);
        const SubsystemDensity rho = partial_trace(psi, {2, 4});
        CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-12));
        // Product structure: rho_A is the tensor product of one-site states.
        const SubsystemDensity one = partial_trace(psi, {2});
        Matrix expected(4, 4);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                expected.block(2 * a, 2 * b, 2, 2) = one.matrix(a, b) * one.matrix;
            }
        }
        CHECK(test::max_abs_diff(rho.matrix, expected) < 1e-12);
    }
    SUBCASE("Bell pair reduces to the maximally mixed state") {
        PureState bell;
        bell.n_sites = 2;
        bell.amplitudes = Vector::Zero(4);
        bell.amplitudes(0) = 1.0 / std::sqrt(2.0);
        bell.amplitudes(3) = 1.0 / std::sqrt(2.0);
        const SubsystemDensity rho = partial_trace(bell, {1});
        CHECK(test::max_abs_diff(rho.matrix, Matrix::Identity(2, 2) * 0.5) < 1e-12);
    }
    SUBCASE("GHZ on three sites") {
        PureState ghz;
        ghz.n_sites = 3;
        ghz.amplitudes = Vector::Zero(8);
        ghz.amplitudes(0) = 1.0 / std::sqrt(2.0);
        ghz.amplitudes(7) = 1.0 / std::sqrt(2.0);
        const SubsystemDensity rho = partial_trace(ghz, {1, 2});
        Matrix expected = Matrix::Zero(4, 4);
        expected(0, 0) = 0.5;
        expected(3, 3) = 0.5;
        CHECK(test::max_abs_diff(rho.matrix, expected) < 1e-12);
        CHECK(purity(rho) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("bad site lists") {
        const PureState psi = prepare_tilted(3, 0.1);
        CHECK_THROWS_AS(partial_trace(psi, {1, 1}), std::invalid_argument);
        CHECK_THROWS_AS(partial_trace(psi, {0}), std::invalid_argument);
        CHECK_THROWS_AS(partial_trace(psi, {4}), std::invalid_argument);
        CHECK_THROWS_AS(partial_trace(psi, {1, 2, 3}), std::invalid_argument);
    }
}

TEST_CASE("cross_partial_trace") {
    SUBCASE("sector double sum reassembles the partial trace") {
        std::mt19937_64 rng(5);
        const PureState psi = test::random_state(4, rng);
        const std::vector<int> sites{1, 3};
        Matrix sum = Matrix::Zero(4, 4);
        const auto components = sector_components(psi);
        for (const auto &left : components) {
            for (const auto &right : components) {
                sum += cross_partial_trace(left, right, sites, 4);
            }
        }
        CHECK(test::max_abs_diff(sum, partial_trace(psi, sites).matrix) < 1e-12);
        // A single-sector normalized component alone reproduces its own
        // Hermitian PSD reduced state.
        for (const auto &component : components) {
            const double norm = component.norm();
            if (norm < 1e-12) {
                continue;
            }
            const Vector unit = component / norm;
            const Matrix diag = cross_partial_trace(unit, unit, sites, 4);
            CHECK(test::max_abs_diff(diag, diag.adjoint()) < 1e-12);
            CHECK(std::abs(diag.trace().real() - 1.0) < 1e-12);
        }
    }
    SUBCASE("disjoint environment support gives zero") {
        // N=2, A={1}; amplitudes on |00> and |11>: the environment bits of
        // the two sectors differ, so the cross block vanishes.
        Vector a = Vector::Zero(4);
        a(0) = 0.8;
        Vector b = Vector::Zero(4);
        b(3) = 0.6;
        const Matrix cross = cross_partial_trace(a, b, {1}, 2);
        CHECK(cross.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(cross_partial_trace(Vector::Zero(4), Vector::Zero(8),
                                            std::vector<int>{1}, 2),
                        std::invalid_argument);
    }
}

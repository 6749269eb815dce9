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

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <cstdint>
#include <vector>

namespace qmpe {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Computational-basis convention: a chain of n_sites spin-1/2 particles is
// indexed by bitstrings where site 1 is the most significant bit.  Bit value
// 0 encodes |up> (sigma_z eigenvalue +1) and bit value 1 encodes |down>
// (sigma_z eigenvalue -1).

/// Bit of `index` at `site` (1-based).
inline int bit_at(std::uint64_t index, int site, int n_sites) {
    return static_cast<int>((index >> (n_sites - site)) & 1ULL);
}

/// Number of down spins (set bits) in a basis index.
inline int hamming_weight(std::uint64_t index) {
    return std::popcount(index);
}

/// Number of up spins in a basis index of an n_sites chain.
inline int up_count(std::uint64_t index, int n_sites) {
    return n_sites - hamming_weight(index);
}

/// Charge q(s) = (N - 2 * hammingWeight(s)) / 2 of a basis index; equal to
/// the sigma_z sum divided by two, half-integer when n_sites is odd.
inline double charge_of(std::uint64_t index, int n_sites) {
    return 0.5 * (n_sites - 2 * hamming_weight(index));
}

/// Pure state of an n_sites chain: 2^n_sites complex amplitudes.
struct PureState {
    int n_sites = 0;
    Vector amplitudes;
};

/// Checks the unit-norm invariant (sum |amplitude|^2 = 1 within tol).
bool is_normalized(const PureState &psi, double tol = 1e-12);

/// Reduced density operator on an ordered site subset A.
struct SubsystemDensity {
    std::vector<int> sites;
    Matrix matrix;
};

/// Partition of the computational basis into charge sectors, indexed by the
/// up-spin count k in {0, ..., n_sites}; sector k has charge k - n_sites/2
/// and holds the C(n_sites, k) indices with hammingWeight == n_sites - k.
struct ChargeSectorIndex {
    int n_sites = 0;
    std::vector<std::vector<std::uint64_t>> sectors;

    double charge(int k) const { return k - 0.5 * n_sites; }
};

/// Enumerates the charge sectors of an n_sites chain (1 <= n_sites <= 16).
/// Sectors are ordered by increasing k; indices ascend within each sector.
ChargeSectorIndex charge_sectors(int n_sites);

/// Projects onto the block-diagonal part across charge sectors:
/// entries (a, b) survive iff q(a) == q(b).  Trace-preserving, idempotent.
Matrix symmetrize(const Matrix &rho);
SubsystemDensity symmetrize(const SubsystemDensity &rho);

/// Re Tr(A^+ B), the real Frobenius inner product; equals Tr(A B) for
/// Hermitian operators.
double hermitian_inner(const Matrix &a, const Matrix &b);

/// Tr(rho^2); the imaginary residue of the trace is discarded.
double purity(const Matrix &rho);
inline double purity(const SubsystemDensity &rho) { return purity(rho.matrix); }

/// Entanglement asymmetry log Tr(rho^2) - log Tr(rho_Q^2) (natural log).
/// Non-negative for physical states; zero iff rho is block-diagonal.
double exact_ea(const Matrix &rho);
inline double exact_ea(const SubsystemDensity &rho) { return exact_ea(rho.matrix); }

/// Precomputed index split for a fixed site subset: maps every full-chain
/// basis index to its (subsystem, environment) coordinates, in the same
/// most-significant-first bit order restricted to each part.
class SubsystemIndexer {
  public:
    /// sites must be sorted, duplicate-free, within {1..n_sites} and a
    /// strict non-empty subset.
    SubsystemIndexer(int n_sites, std::vector<int> sites);

    int n_sites() const { return n_sites_; }
    const std::vector<int> &sites() const { return sites_; }
    std::size_t sub_dim() const { return sub_dim_; }
    std::size_t env_dim() const { return env_dim_; }
    std::uint32_t sub_index(std::uint64_t full_index) const {
        return sub_index_[full_index];
    }
    std::uint32_t env_index(std::uint64_t full_index) const {
        return env_index_[full_index];
    }

    /// Scatters a full amplitude vector into a (sub_dim x env_dim) matrix,
    /// so that the reduced density operator is reshape(psi) * reshape(psi)^+.
    Matrix reshape(const Vector &psi) const;

  private:
    int n_sites_;
    std::vector<int> sites_;
    std::size_t sub_dim_;
    std::size_t env_dim_;
    std::vector<std::uint32_t> sub_index_;
    std::vector<std::uint32_t> env_index_;
};

/// Reduced density operator rho_A of a pure state:
/// (rho_A)_{ab} = sum_e psi(a,e) conj(psi(b,e)).
SubsystemDensity partial_trace(const PureState &psi, const std::vector<int> &sites);

/// Tr_env |psi_m><psi_mp| for two full-length amplitude vectors (building
/// block for the analytic dephasing channel; non-Hermitian when m != mp).
Matrix cross_partial_trace(const Vector &psi_m, const Vector &psi_mp,
                           const SubsystemIndexer &indexer);
Matrix cross_partial_trace(const Vector &psi_m, const Vector &psi_mp,
                           const std::vector<int> &sites, int n_sites);

/// Density operator |psi><psi| of a small chain viewed as one subsystem.
SubsystemDensity pure_density(const PureState &psi);

} // namespace qmpe

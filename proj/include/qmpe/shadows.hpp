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

#include "qmpe/rm_protocol.hpp"
#include "qmpe/spin_core.hpp"

#include <vector>

namespace qmpe {

/// Classical shadow restricted to a subsystem: the tensor product over the
/// chosen sites of 3 U^+ |s><s| U - I.  Hermitian with unit trace by
/// construction; not positive semidefinite.
struct SubsystemShadow {
    std::vector<int> sites;
    Matrix matrix;
    int record_index = -1;
};

/// Shadow of measurement m of one record.
SubsystemShadow shadow_single(const RMRecord &record, int m,
                              const std::vector<int> &sites);

/// Per-unitary shadow: arithmetic mean of shadow_single over the record's
/// bitstrings.
SubsystemShadow shadow_per_unitary(const RMRecord &record,
                                   const std::vector<int> &sites);

/// U-statistics purity estimator with n = 2:
/// [N_U (N_U - 1)]^-1 sum_{r1 != r2} Tr(shadow_r1 shadow_r2).
double purity_ustat(const std::vector<SubsystemShadow> &shadows);

/// Entanglement-asymmetry estimator:
///   log sum_{r1 != r2} Tr(rho_r1 rho_r2) - log sum_{r1 != r2} Tr(rhoQ_r1 rhoQ_r2)
/// with rhoQ_r the symmetrized shadow.  Throws EstimateUndefinedError
/// (carrying both raw pair sums) when either sum is non-positive.
double ea_estimator(const std::vector<SubsystemShadow> &shadows);

/// Frobenius-distance estimator against a reference ensemble state:
///   sqrt(1 - clamp(2/N_U sum_r Tr(rho_r rho_DE) /
///                  (beta^-1 sum_{r1 != r2} Tr(rho_r1 rho_r2) + Tr(rho_DE^2)), 0, 1))
/// with beta = N_U (N_U - 1).  Throws EstimateUndefinedError when the
/// denominator is non-positive.
double fd_estimator(const std::vector<SubsystemShadow> &shadows,
                    const SubsystemDensity &rho_de);

} // namespace qmpe

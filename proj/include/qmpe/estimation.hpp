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
#include "qmpe/shadows.hpp"
#include "qmpe/spin_core.hpp"

#include <optional>
#include <vector>

namespace qmpe {

/// Shadow-based estimates for one subsystem of one dataset.  NaN values mark
/// estimates lost to non-positive moments (the missing-data policy); errors
/// are one-sigma jackknife deviations from dropping one unitary at a time.
struct SubsystemEstimate {
    std::vector<int> sites; // empty for the subsystem average
    double ea = 0.0;
    double ea_err = 0.0;
    double fd = 0.0;
    double fd_err = 0.0;
    int n_excluded = 0; // component estimates excluded from this row
};

struct DatasetEstimate {
    RMHeader header;
    std::vector<SubsystemEstimate> per_subsystem;
    SubsystemEstimate averaged; // joint leave-one-unitary-out across subsystems
};

/// Estimates EA (and FD when references are supplied) for every subsystem of
/// a dataset, plus the subsystem average with jointly jackknifed errors.
/// All subsystems reuse the same records.  `references`, when non-empty,
/// holds one diagonal-ensemble state per subsystem (nullptr to skip FD for
/// that subsystem).
DatasetEstimate estimate_dataset(const RMDataset &dataset,
                                 const std::vector<std::vector<int>> &subsystems,
                                 const std::vector<const SubsystemDensity *> &references = {});

} // namespace qmpe

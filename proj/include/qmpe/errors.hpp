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

#include <stdexcept>
#include <string>

namespace qmpe {

/// Raised when a finite-sample U-statistic makes the requested functional
/// undefined (log of a non-positive moment, or a vanishing denominator).
/// Carries the raw moment values so the caller can apply its own
/// missing-data policy instead of clamping.
class EstimateUndefinedError : public std::runtime_error {
  public:
    EstimateUndefinedError(const std::string &what, double raw_numerator,
                           double raw_denominator)
        : std::runtime_error(what), numerator_(raw_numerator),
          denominator_(raw_denominator) {}

    double numerator() const noexcept { return numerator_; }
    double denominator() const noexcept { return denominator_; }

  private:
    double numerator_;
    double denominator_;
};

/// Invalid or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while reading or writing artifacts (CLI exit code 3).
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data, e.g. a corrupt dataset line (CLI exit code 4).
class DataError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qmpe

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

#include "qmpe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmpe {

namespace {

bool finite(double v) { return std::isfinite(v); }

double combined_sigma(const EstimateSeries &a, const EstimateSeries &b,
                      std::size_t i) {
    const double ea = i < a.errors.size() && finite(a.errors[i]) ? a.errors[i] : 0.0;
    const double eb = i < b.errors.size() && finite(b.errors[i]) ? b.errors[i] : 0.0;
    return std::sqrt(ea * ea + eb * eb);
}

} // namespace

std::vector<std::vector<int>> enumerate_subsystems(int n_sites,
                                                   const SubsystemSpec &spec) {
    if (spec.n_a < 1) {
        throw std::invalid_argument("enumerate_subsystems: n_a must be >= 1");
    }
    std::vector<std::vector<int>> out;
    if (spec.mode == SubsystemSpec::Mode::kConnected) {
        if (spec.n_a > n_sites) {
            throw std::invalid_argument("enumerate_subsystems: n_a exceeds the chain");
        }
        for (int start = 1; start + spec.n_a - 1 <= n_sites; ++start) {
            std::vector<int> window(static_cast<std::size_t>(spec.n_a));
            for (int j = 0; j < spec.n_a; ++j) {
                window[static_cast<std::size_t>(j)] = start + j;
            }
            out.push_back(std::move(window));
        }
        return out;
    }
    std::vector<int> pool = spec.pool;
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    if (pool.size() != spec.pool.size()) {
        throw std::invalid_argument("enumerate_subsystems: pool has duplicates");
    }
    for (int s : pool) {
        if (s < 1 || s > n_sites) {
            throw std::invalid_argument("enumerate_subsystems: pool site out of range");
        }
    }
    const int p = static_cast<int>(pool.size());
    if (spec.n_a > p) {
        throw std::invalid_argument("enumerate_subsystems: n_a exceeds the pool");
    }
    // All C(p, n_a) subsets in lexicographic order over pool positions.
    std::vector<int> pick(static_cast<std::size_t>(spec.n_a));
    for (int j = 0; j < spec.n_a; ++j) {
        pick[static_cast<std::size_t>(j)] = j;
    }
    for (;;) {
        std::vector<int> subset(static_cast<std::size_t>(spec.n_a));
        for (int j = 0; j < spec.n_a; ++j) {
            subset[static_cast<std::size_t>(j)] =
                pool[static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])];
        }
        out.push_back(std::move(subset));
        int j = spec.n_a - 1;
        while (j >= 0 && pick[static_cast<std::size_t>(j)] == p - spec.n_a + j) {
            --j;
        }
        if (j < 0) {
            break;
        }
        ++pick[static_cast<std::size_t>(j)];
        for (int i = j + 1; i < spec.n_a; ++i) {
            pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return out;
}

JackknifeResult jackknife(int n, const std::function<double(int)> &statistic) {
    if (n < 3) {
        throw std::invalid_argument("jackknife: need at least three unitaries");
    }
    const double full = statistic(-1);
    std::vector<double> dropped(static_cast<std::size_t>(n));
    double mean = 0.0;
    for (int r = 0; r < n; ++r) {
        dropped[static_cast<std::size_t>(r)] = statistic(r);
        mean += dropped[static_cast<std::size_t>(r)];
    }
    mean /= n;
    double ss = 0.0;
    for (double d : dropped) {
        ss += (d - mean) * (d - mean);
    }
    const double variance = (static_cast<double>(n) - 1.0) / n * ss;
    return JackknifeResult{full, std::sqrt(variance)};
}

JackknifeResult jackknife_mean(const std::vector<double> &values) {
    const int n = static_cast<int>(values.size());
    double total = 0.0;
    for (double v : values) {
        total += v;
    }
    return jackknife(n, [&](int drop) {
        if (drop < 0) {
            return total / n;
        }
        return (total - values[static_cast<std::size_t>(drop)]) / (n - 1);
    });
}

EstimateSeries average_series(const std::vector<EstimateSeries> &list,
                              AverageError rule) {
    if (list.empty()) {
        throw std::invalid_argument("average_series: empty input");
    }
    if (list.size() == 1) {
        return list.front();
    }
    const auto &times = list.front().times;
    for (const auto &series : list) {
        if (series.times != times) {
            throw std::invalid_argument("average_series: time grids differ");
        }
    }
    EstimateSeries out;
    out.times = times;
    out.values.assign(times.size(), std::nan(""));
    out.errors.assign(times.size(), std::nan(""));
    out.label = list.front().label;
    out.label.subsystem = "avg";
    for (std::size_t i = 0; i < times.size(); ++i) {
        double sum = 0.0;
        int count = 0;
        for (const auto &series : list) {
            if (finite(series.values[i])) {
                sum += series.values[i];
                ++count;
            }
        }
        if (count == 0) {
            continue;
        }
        const double mean = sum / count;
        out.values[i] = mean;
        if (rule == AverageError::kStdOfMean && count >= 2) {
            double ss = 0.0;
            for (const auto &series : list) {
                if (finite(series.values[i])) {
                    ss += (series.values[i] - mean) * (series.values[i] - mean);
                }
            }
            out.errors[i] = std::sqrt(ss / (count - 1)) / std::sqrt(count);
        }
    }
    return out;
}

std::optional<Crossing> detect_crossing(const EstimateSeries &a,
                                        const EstimateSeries &b) {
    if (a.times != b.times) {
        throw std::invalid_argument("detect_crossing: time grids differ");
    }
    // Work on the grid points where both series are defined.
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        if (finite(a.values[i]) && finite(b.values[i])) {
            idx.push_back(i);
        }
    }
    if (idx.size() < 2) {
        return std::nullopt;
    }
    for (std::size_t j = 0; j + 1 < idx.size(); ++j) {
        const std::size_t i0 = idx[j];
        const std::size_t i1 = idx[j + 1];
        const double d0 = a.values[i0] - b.values[i0];
        const double d1 = a.values[i1] - b.values[i1];
        if (d0 == 0.0) {
            continue; // touching at a grid point is not a sign change yet
        }
        if ((d0 > 0.0) == (d1 > 0.0) && d1 != 0.0) {
            continue;
        }
        const double fraction = d0 / (d0 - d1);
        const double t_star =
            a.times[i0] + fraction * (a.times[i1] - a.times[i0]);
        bool before = false;
        bool after = false;
        for (std::size_t i : idx) {
            const double gap = std::abs(a.values[i] - b.values[i]);
            if (a.times[i] <= a.times[i0] && gap > combined_sigma(a, b, i)) {
                before = true;
            }
            if (a.times[i] >= a.times[i1] && gap > combined_sigma(a, b, i)) {
                after = true;
            }
        }
        return Crossing{t_star, before && after};
    }
    return std::nullopt;
}

std::string subsystem_label(const std::vector<int> &sites) {
    std::string label;
    for (std::size_t j = 0; j < sites.size(); ++j) {
        if (j > 0) {
            label += '.';
        }
        label += std::to_string(sites[j]);
    }
    return label;
}

} // namespace qmpe

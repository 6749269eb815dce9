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

#include "qmpe/commands.hpp"

#include "qmpe/diagonal_ensemble.hpp"
#include "qmpe/errors.hpp"
#include "qmpe/estimation.hpp"
#include "qmpe/io.hpp"
#include "qmpe/oracle_pipeline.hpp"
#include "qmpe/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace qmpe {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string manifest_json(const RunConfig &config, const std::string &command,
                          const std::string &scenario_label, double gamma) {
    json m;
    m["version"] = QMPE_VERSION;
    m["command"] = command;
    m["config_hash"] = config_hash(config);
    m["seed"] = config.seed;
    m["scenario"] = scenario_label;
    m["gamma"] = gamma;
    return m.dump();
}

void write_run_manifest(const RunConfig &config, const std::string &command) {
    json m;
    m["version"] = QMPE_VERSION;
    m["command"] = command;
    m["config_hash"] = config_hash(config);
    m["seed"] = config.seed;
    m["config"] = canonical_text(config);
    std::string text = m.dump(2);
    text += '\n';
    std::ofstream out(config.out_dir + "/manifest.json",
                      std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write manifest in " + config.out_dir);
    }
    out << text;
}

void ensure_out_dir(const std::string &out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir + ": " +
                      ec.message());
    }
}

/// Disorder realizations: explicit files win, otherwise fresh samples from
/// the configured seed (one substream per realization index).
std::vector<std::vector<double>> disorder_realizations(const RunConfig &config) {
    std::vector<std::vector<double>> out;
    if (!config.disorder_files.empty()) {
        for (const auto &path : config.disorder_files) {
            auto h = read_disorder(path);
            if (h.size() != static_cast<std::size_t>(config.n_sites)) {
                throw DataError(path + ": expected " +
                                std::to_string(config.n_sites) + " values");
            }
            out.push_back(std::move(h));
        }
        return out;
    }
    for (int r = 0; r < config.disorder_realizations; ++r) {
        auto rng = substream(config.disorder_seed, {static_cast<std::uint64_t>(r)});
        out.push_back(sample_disorder(config.n_sites, config.disorder_w,
                                      config.j0, rng));
    }
    return out;
}

std::vector<EstimateRow> result_rows(const ScenarioResult &result) {
    std::vector<EstimateRow> rows;
    for (std::size_t thi = 0; thi < result.thetas.size(); ++thi) {
        for (std::size_t si = 0; si < result.subsystems.size(); ++si) {
            for (std::size_t ti = 0; ti < result.times.size(); ++ti) {
                const ScenarioPoint &point = result.at(thi, si, ti);
                rows.push_back(EstimateRow{result.times[ti], result.thetas[thi],
                                           subsystem_label(result.subsystems[si]),
                                           point.ea, 0.0, point.fd,
                                           std::isfinite(point.fd) ? 0.0 : kNan, 0,
                                           "oracle"});
            }
        }
        const EstimateSeries avg_ea =
            result.series(thi, -1, "EA");
        const EstimateSeries avg_fd = result.series(thi, -1, "FD");
        for (std::size_t ti = 0; ti < result.times.size(); ++ti) {
            rows.push_back(EstimateRow{result.times[ti], result.thetas[thi], "avg",
                                       avg_ea.values[ti], 0.0, avg_fd.values[ti],
                                       std::isfinite(avg_fd.values[ti]) ? 0.0 : kNan,
                                       0, "oracle"});
        }
    }
    return rows;
}

void export_diagonal_ensembles(const RunConfig &config,
                               const std::vector<std::vector<int>> &subsystems) {
    const QuenchScenario scenario = make_scenario(config, {}, config.label);
    if (!scenario.spec) {
        return;
    }
    const SectorSpectrum spectrum = sector_eigendecomposition(*scenario.spec);
    for (std::size_t thi = 0; thi < config.thetas.size(); ++thi) {
        const DiagonalEnsemble ensemble(
            spectrum, prepare_tilted(config.n_sites, config.thetas[thi]));
        for (const auto &sites : subsystems) {
            const std::string path = config.out_dir + "/de_theta" +
                                     std::to_string(thi) + "_" +
                                     subsystem_label(sites) + ".demat";
            write_subsystem_density(path, ensemble.subsystem(sites));
        }
    }
}

/// Splits a possibly suffixed scenario label "name#r3" into (name, 3).
std::pair<std::string, int> split_realization(const std::string &label) {
    const std::size_t pos = label.rfind("#r");
    if (pos == std::string::npos) {
        return {label, -1};
    }
    const std::string tail = label.substr(pos + 2);
    if (tail.empty() ||
        tail.find_first_not_of("0123456789") != std::string::npos) {
        return {label, -1};
    }
    return {label.substr(0, pos), std::stoi(tail)};
}

std::string sanitize(const std::string &label) {
    std::string out;
    for (char ch : label) {
        out += (std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '-' ||
                ch == '_')
                   ? ch
                   : '_';
    }
    return out;
}

} // namespace

std::vector<std::string> run_simulate(const RunConfig &config) {
    validate_config(config);
    ensure_out_dir(config.out_dir);
    write_run_manifest(config, "simulate");
    const auto subsystems = enumerate_subsystems(config.n_sites, config.subsystems);
    std::vector<std::string> written;

    if (config.model == "disordered") {
        const auto realizations = disorder_realizations(config);
        for (std::size_t r = 0; r < realizations.size(); ++r) {
            const std::string label = config.label + "#r" + std::to_string(r);
            const QuenchScenario scenario =
                make_scenario(config, realizations[r], label);
            const ScenarioResult result =
                run_scenario(scenario, config.thetas, subsystems, config.times);
            const std::string csv_path =
                config.out_dir + "/oracle_real" + std::to_string(r) + ".csv";
            write_estimate_csv(csv_path,
                               manifest_json(config, "simulate", label, config.gamma),
                               result_rows(result));
            write_disorder(config.out_dir + "/disorder_real" + std::to_string(r) +
                               ".txt",
                           realizations[r]);
            written.push_back(csv_path);
        }
    } else if (!config.sweep_gammas.empty()) {
        const QuenchScenario scenario = make_scenario(config, {}, config.label);
        const auto results = dephasing_sweep(scenario, config.sweep_gammas,
                                             config.thetas, subsystems, config.times);
        for (std::size_t gi = 0; gi < results.size(); ++gi) {
            const std::string csv_path =
                config.out_dir + "/oracle_gamma" + std::to_string(gi) + ".csv";
            write_estimate_csv(csv_path,
                               manifest_json(config, "simulate", config.label,
                                             results[gi].gamma),
                               result_rows(results[gi]));
            written.push_back(csv_path);
        }
    } else {
        const QuenchScenario scenario = make_scenario(config, {}, config.label);
        const ScenarioResult result =
            run_scenario(scenario, config.thetas, subsystems, config.times);
        const std::string csv_path = config.out_dir + "/oracle.csv";
        write_estimate_csv(csv_path,
                           manifest_json(config, "simulate", config.label,
                                         config.gamma),
                           result_rows(result));
        written.push_back(csv_path);
    }
    if (config.export_de && config.model == "xy") {
        export_diagonal_ensembles(config, subsystems);
    }
    return written;
}

std::vector<std::string> run_measure(const RunConfig &config) {
    validate_config(config);
    ensure_out_dir(config.out_dir);
    write_run_manifest(config, "measure");
    std::vector<std::string> written;

    std::vector<std::vector<double>> realizations;
    if (config.model == "disordered") {
        realizations = disorder_realizations(config);
    } else {
        realizations.push_back({}); // single pseudo-realization
    }
    for (std::size_t r = 0; r < realizations.size(); ++r) {
        const bool disordered = config.model == "disordered";
        const std::string label =
            disordered ? config.label + "#r" + std::to_string(r) : config.label;
        QuenchScenario scenario = make_scenario(config, realizations[r], label);
        SectorSpectrum spectrum;
        const SectorSpectrum *spectrum_ptr = nullptr;
        if (scenario.spec) {
            spectrum = sector_eigendecomposition(*scenario.spec);
            spectrum_ptr = &spectrum;
        }
        if (disordered) {
            write_disorder(config.out_dir + "/disorder_real" + std::to_string(r) +
                               ".txt",
                           realizations[r]);
        }
        for (std::size_t thi = 0; thi < config.thetas.size(); ++thi) {
            scenario.theta = config.thetas[thi];
            for (std::size_t ti = 0; ti < config.times.size(); ++ti) {
                const std::uint64_t file_seed = substream_key(
                    config.seed, {thi, ti, static_cast<std::uint64_t>(r)});
                RMDataset dataset =
                    run_rm_experiment(scenario, config.times[ti], config.n_u,
                                      config.n_m, file_seed, spectrum_ptr);
                std::string path = config.out_dir + "/rm_th" + std::to_string(thi) +
                                   "_t" + std::to_string(ti);
                if (disordered) {
                    path += "_real" + std::to_string(r);
                }
                path += ".rmds";
                write_rmds(path, dataset);
                written.push_back(path);
            }
        }
    }
    return written;
}

namespace {

/// Diagonal-ensemble reference cache for the estimate command, keyed by
/// (realization, theta).
class ReferenceCache {
  public:
    ReferenceCache(const RunConfig &config,
                   std::vector<std::vector<int>> subsystems)
        : config_(config), subsystems_(std::move(subsystems)) {}

    /// One reference pointer per subsystem; empty when references are off.
    std::vector<const SubsystemDensity *> get(int realization, double theta) {
        if (config_.reference != "scenario") {
            return {};
        }
        const auto key = std::make_pair(realization, theta);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            const SectorSpectrum &spectrum = spectrum_for(realization);
            const DiagonalEnsemble ensemble(
                spectrum, prepare_tilted(config_.n_sites, theta));
            std::vector<SubsystemDensity> states;
            states.reserve(subsystems_.size());
            for (const auto &sites : subsystems_) {
                states.push_back(ensemble.subsystem(sites));
            }
            it = cache_.emplace(key, std::move(states)).first;
        }
        std::vector<const SubsystemDensity *> out;
        out.reserve(it->second.size());
        for (const auto &state : it->second) {
            out.push_back(&state);
        }
        return out;
    }

  private:
    const SectorSpectrum &spectrum_for(int realization) {
        auto it = spectra_.find(realization);
        if (it != spectra_.end()) {
            return it->second;
        }
        std::vector<double> h;
        if (config_.model == "disordered") {
            const int r = realization < 0 ? 0 : realization;
            if (!config_.disorder_files.empty()) {
                if (static_cast<std::size_t>(r) >= config_.disorder_files.size()) {
                    throw ConfigError("estimate: realization index exceeds disorder.files");
                }
                h = read_disorder(config_.disorder_files[static_cast<std::size_t>(r)]);
            } else {
                auto rng = substream(config_.disorder_seed,
                                     {static_cast<std::uint64_t>(r)});
                h = sample_disorder(config_.n_sites, config_.disorder_w, config_.j0,
                                    rng);
            }
        }
        const QuenchScenario scenario = make_scenario(config_, h, config_.label);
        if (!scenario.spec) {
            throw ConfigError("estimate: reference requires a Hamiltonian model");
        }
        return spectra_.emplace(realization, sector_eigendecomposition(*scenario.spec))
            .first->second;
    }

    const RunConfig &config_;
    std::vector<std::vector<int>> subsystems_;
    std::map<int, SectorSpectrum> spectra_;
    std::map<std::pair<int, double>, std::vector<SubsystemDensity>> cache_;
};

} // namespace

std::vector<std::string> run_estimate(const RunConfig &config,
                                      const std::vector<std::string> &dataset_paths,
                                      const std::string &oracle_csv,
                                      std::ostream &log) {
    validate_config(config);
    if (dataset_paths.empty()) {
        throw ConfigError("estimate: no dataset paths given");
    }
    ensure_out_dir(config.out_dir);
    write_run_manifest(config, "estimate");
    const auto subsystems = enumerate_subsystems(config.n_sites, config.subsystems);
    ReferenceCache references(config, subsystems);

    std::vector<std::string> sorted_paths = dataset_paths;
    std::sort(sorted_paths.begin(), sorted_paths.end());
    std::map<std::string, std::vector<EstimateRow>> groups;
    for (const std::string &path : sorted_paths) {
        const RMDataset dataset = read_rmds(path);
        if (dataset.header.n_sites != config.n_sites) {
            throw DataError(path + ": dataset n_sites differs from the config");
        }
        const auto [base, realization] = split_realization(dataset.header.scenario);
        const auto refs = references.get(realization, dataset.header.theta);
        const DatasetEstimate estimate =
            estimate_dataset(dataset, subsystems, refs);
        auto &rows = groups[dataset.header.scenario.empty()
                                ? std::string("dataset")
                                : dataset.header.scenario];
        for (const auto &sub : estimate.per_subsystem) {
            rows.push_back(EstimateRow{dataset.header.time, dataset.header.theta,
                                       subsystem_label(sub.sites), sub.ea,
                                       sub.ea_err, sub.fd, sub.fd_err,
                                       sub.n_excluded, "shadow"});
        }
        rows.push_back(EstimateRow{dataset.header.time, dataset.header.theta, "avg",
                                   estimate.averaged.ea, estimate.averaged.ea_err,
                                   estimate.averaged.fd, estimate.averaged.fd_err,
                                   estimate.averaged.n_excluded, "shadow"});
    }

    std::vector<std::string> written;
    for (auto &[label, rows] : groups) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const EstimateRow &a, const EstimateRow &b) {
                             if (a.theta != b.theta) {
                                 return a.theta < b.theta;
                             }
                             return a.t < b.t;
                         });
        const std::string path =
            groups.size() == 1
                ? config.out_dir + "/estimate.csv"
                : config.out_dir + "/estimate_" + sanitize(label) + ".csv";
        write_estimate_csv(path, manifest_json(config, "estimate", label, config.gamma),
                           rows);
        written.push_back(path);
    }

    if (!oracle_csv.empty()) {
        const EstimateCsv oracle = read_estimate_csv(oracle_csv);
        double worst = 0.0;
        int matched = 0;
        for (const auto &[label, rows] : groups) {
            for (const EstimateRow &row : rows) {
                for (const EstimateRow &reference_row : oracle.rows) {
                    if (reference_row.t == row.t && reference_row.theta == row.theta &&
                        reference_row.subsystem == row.subsystem) {
                        if (std::isfinite(row.ea) && std::isfinite(reference_row.ea) &&
                            row.ea_err > 0.0) {
                            worst = std::max(worst, std::abs(row.ea - reference_row.ea) /
                                                        row.ea_err);
                            ++matched;
                        }
                    }
                }
            }
        }
        log << "cross-check: " << matched
            << " points matched, max |EA deviation| / sigma = "
            << format_double(worst) << "\n";
    }
    return written;
}

void run_report(const std::vector<std::string> &csv_paths,
                const std::string &out_dir, std::ostream &log) {
    if (csv_paths.empty()) {
        throw ConfigError("report: no CSV paths given");
    }
    ensure_out_dir(out_dir);

    struct FileSeries {
        std::string base_label;
        double gamma = kNan;
        std::vector<EstimateSeries> ea;
        std::vector<EstimateSeries> fd;
    };
    std::vector<FileSeries> files;
    for (const std::string &path : csv_paths) {
        const EstimateCsv csv = read_estimate_csv(path);
        FileSeries fsr;
        fsr.base_label = path;
        if (!csv.manifest.empty()) {
            try {
                const json m = json::parse(csv.manifest);
                fsr.base_label = m.value("scenario", path);
                fsr.gamma = m.value("gamma", kNan);
            } catch (const json::exception &) {
                throw DataError(path + ": malformed manifest line");
            }
        }
        fsr.base_label = split_realization(fsr.base_label).first;
        std::vector<EstimateRow> avg_rows;
        for (const EstimateRow &row : csv.rows) {
            if (row.subsystem == "avg") {
                avg_rows.push_back(row);
            }
        }
        if (avg_rows.empty()) {
            throw DataError(path + ": no subsystem-averaged rows");
        }
        fsr.ea = collect_series(avg_rows, "EA");
        fsr.fd = collect_series(avg_rows, "FD");
        files.push_back(std::move(fsr));
    }

    // Group files by base label; several files in a group are disorder
    // realizations (or repeated runs) and are averaged pointwise.
    std::map<std::string, std::vector<const FileSeries *>> grouped;
    for (const FileSeries &fsr : files) {
        grouped[fsr.base_label].push_back(&fsr);
    }

    json report;
    report["version"] = QMPE_VERSION;
    std::string crossings_csv =
        "scenario,quantity,theta_a,theta_b,t_star,significant\n";
    for (const auto &[label, members] : grouped) {
        json group;
        group["label"] = label;
        group["gamma"] = members.front()->gamma;
        group["n_files"] = members.size();
        json series_json = json::array();
        json crossings_json = json::array();
        std::string verdict = "no crossing within window";

        for (const std::string quantity : {std::string("EA"), std::string("FD")}) {
            // Collect per-theta series, averaging across group members.
            std::map<double, std::vector<EstimateSeries>> by_theta;
            for (const FileSeries *member : members) {
                for (const EstimateSeries &s :
                     quantity == "EA" ? member->ea : member->fd) {
                    by_theta[s.label.theta].push_back(s);
                }
            }
            std::vector<EstimateSeries> curves;
            for (auto &[theta, list] : by_theta) {
                EstimateSeries avg = list.size() == 1
                                         ? list.front()
                                         : average_series(list, AverageError::kStdOfMean);
                avg.label = SeriesLabel{theta, "avg", -1, quantity};
                bool any_finite = false;
                for (double v : avg.values) {
                    any_finite = any_finite || std::isfinite(v);
                }
                if (any_finite) {
                    curves.push_back(std::move(avg));
                }
            }
            for (const EstimateSeries &s : curves) {
                json js;
                js["quantity"] = quantity;
                js["theta"] = s.label.theta;
                js["times"] = s.times;
                js["values"] = s.values;
                js["errors"] = s.errors;
                series_json.push_back(std::move(js));
            }
            if (quantity != "EA" || curves.size() < 2) {
                continue;
            }
            // Order by initial EA, largest first; the QMPE verdict asks the
            // most-asymmetric curve to cross below every other one.
            std::sort(curves.begin(), curves.end(),
                      [](const EstimateSeries &a, const EstimateSeries &b) {
                          return a.values.front() > b.values.front();
                      });
            bool all_crossed = true;
            double first_crossing = kNan;
            for (std::size_t i = 0; i < curves.size(); ++i) {
                for (std::size_t j = i + 1; j < curves.size(); ++j) {
                    const auto crossing = detect_crossing(curves[i], curves[j]);
                    json jc;
                    jc["quantity"] = quantity;
                    jc["theta_a"] = curves[i].label.theta;
                    jc["theta_b"] = curves[j].label.theta;
                    std::string t_star_text = "nan";
                    if (crossing) {
                        jc["t_star"] = crossing->t_star;
                        jc["significant"] = crossing->significant;
                        t_star_text = format_double(crossing->t_star);
                    } else {
                        jc["t_star"] = nullptr;
                        jc["significant"] = false;
                    }
                    crossings_json.push_back(std::move(jc));
                    crossings_csv += sanitize(label) + "," + quantity + "," +
                                     format_double(curves[i].label.theta) + "," +
                                     format_double(curves[j].label.theta) + "," +
                                     t_star_text + "," +
                                     (crossing && crossing->significant ? "1" : "0") +
                                     "\n";
                    if (i == 0) {
                        if (!crossing) {
                            all_crossed = false;
                        } else if (!std::isfinite(first_crossing) ||
                                   crossing->t_star < first_crossing) {
                            first_crossing = crossing->t_star;
                        }
                    }
                }
            }
            if (all_crossed) {
                std::ostringstream v;
                v << "QMPE: crossing at t* in (0, "
                  << format_double(curves.front().times.back()) << " s), first at "
                  << format_double(first_crossing) << " s";
                verdict = v.str();
            }
        }
        group["series"] = std::move(series_json);
        group["crossings"] = std::move(crossings_json);
        group["verdict"] = verdict;
        log << label << ": " << verdict << "\n";
        report["groups"].push_back(std::move(group));
    }

    std::ofstream json_out(out_dir + "/report.json",
                           std::ios::binary | std::ios::trunc);
    if (!json_out) {
        throw IoError("cannot write report.json in " + out_dir);
    }
    json_out << report.dump(2) << "\n";
    std::ofstream csv_out(out_dir + "/crossings.csv",
                          std::ios::binary | std::ios::trunc);
    if (!csv_out) {
        throw IoError("cannot write crossings.csv in " + out_dir);
    }
    csv_out << crossings_csv;
}

} // namespace qmpe

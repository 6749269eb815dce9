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
#include "qmpe/errors.hpp"
#include "qmpe/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir;
    int threads = 0;
};

void add_common(CLI::App *cmd, CommonOptions &opts) {
    cmd->add_option("--config", opts.config_path, "Run configuration file");
    cmd->add_option("--preset", opts.preset, "Preset name or path");
    cmd->add_option("--seed", opts.seed, "Master seed override")
        ->each([&opts](const std::string &) { opts.seed_given = true; });
    cmd->add_option("--out", opts.out_dir, "Output directory override");
    cmd->add_option("--threads", opts.threads, "Worker thread cap");
}

qmpe::RunConfig resolve_config(const CommonOptions &opts) {
    qmpe::RunConfig config;
    if (!opts.config_path.empty()) {
        config = qmpe::parse_config_file(opts.config_path);
        if (!opts.preset.empty()) {
            throw qmpe::ConfigError("give either --config or --preset, not both");
        }
    } else if (!opts.preset.empty()) {
        config = qmpe::load_preset(opts.preset);
    } else {
        throw qmpe::ConfigError("a --config file or --preset name is required");
    }
    // Environment overrides (thread count and output directory only).
    if (const char *dir = std::getenv("QMPE_OUT_DIR")) {
        config.out_dir = dir;
    }
    if (const char *threads = std::getenv("QMPE_THREADS")) {
        qmpe::set_max_threads(std::atoi(threads));
    }
    // Explicit flags outrank both.
    if (opts.seed_given) {
        config.seed = opts.seed;
    }
    if (!opts.out_dir.empty()) {
        config.out_dir = opts.out_dir;
    }
    if (opts.threads > 0) {
        qmpe::set_max_threads(opts.threads);
    }
    return config;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Spin-chain quench simulator and randomized-measurement "
                 "analysis toolkit"};
    app.require_subcommand(1);

    CommonOptions simulate_opts;
    CLI::App *simulate = app.add_subcommand(
        "simulate", "Exact EA/FD oracle curves for a scenario");
    add_common(simulate, simulate_opts);

    CommonOptions measure_opts;
    CLI::App *measure = app.add_subcommand(
        "measure", "Simulate the randomized-measurement protocol");
    add_common(measure, measure_opts);

    CommonOptions estimate_opts;
    std::vector<std::string> dataset_paths;
    std::string oracle_csv;
    CLI::App *estimate = app.add_subcommand(
        "estimate", "Shadow estimates from rmds-1 datasets");
    add_common(estimate, estimate_opts);
    estimate->add_option("datasets", dataset_paths, "rmds-1 dataset files")
        ->expected(-1);
    estimate->add_option("--oracle", oracle_csv,
                         "Oracle CSV for a cross-check summary");

    std::vector<std::string> report_csvs;
    std::string report_out = "out";
    CLI::App *report = app.add_subcommand(
        "report", "Crossing detection and QMPE verdicts over CSVs");
    report->add_option("csvs", report_csvs, "estimate/oracle CSV files")
        ->expected(-1);
    report->add_option("--out", report_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) {
            for (const auto &path : qmpe::run_simulate(resolve_config(simulate_opts))) {
                std::cout << path << "\n";
            }
        } else if (measure->parsed()) {
            for (const auto &path : qmpe::run_measure(resolve_config(measure_opts))) {
                std::cout << path << "\n";
            }
        } else if (estimate->parsed()) {
            for (const auto &path :
                 qmpe::run_estimate(resolve_config(estimate_opts), dataset_paths,
                                    oracle_csv, std::cout)) {
                std::cout << path << "\n";
            }
        } else if (report->parsed()) {
            if (report->count("--out") == 0) {
                if (const char *dir = std::getenv("QMPE_OUT_DIR")) {
                    report_out = dir;
                }
            }
            qmpe::run_report(report_csvs, report_out, std::cout);
        }
    } catch (const qmpe::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qmpe::IoError &e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const qmpe::DataError &e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

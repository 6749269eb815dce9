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

#include "qmpe/config.hpp"

#include "qmpe/errors.hpp"
#include "qmpe/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qmpe {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string &text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string &value) {
    std::vector<std::string> items;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = value.find(',', start);
        const std::string item =
            trim(comma == std::string::npos ? value.substr(start)
                                            : value.substr(start, comma - start));
        if (!item.empty()) {
            items.push_back(item);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return items;
}

/// Parses a double; a trailing "pi" multiplies by pi.
double parse_angle_or_number(const std::string &token, const std::string &key) {
    std::string body = token;
    double factor = 1.0;
    if (body.size() > 2 && body.substr(body.size() - 2) == "pi") {
        factor = kPi;
        body = trim(body.substr(0, body.size() - 2));
    }
    double value = 0.0;
    const auto result =
        std::from_chars(body.data(), body.data() + body.size(), value);
    if (result.ec != std::errc() || result.ptr != body.data() + body.size()) {
        throw ConfigError("bad number for " + key + ": '" + token + "'");
    }
    return value * factor;
}

int parse_int(const std::string &token, const std::string &key) {
    int value = 0;
    const auto result =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
        throw ConfigError("bad integer for " + key + ": '" + token + "'");
    }
    return value;
}

std::uint64_t parse_u64(const std::string &token, const std::string &key) {
    std::uint64_t value = 0;
    const auto result =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
        throw ConfigError("bad seed for " + key + ": '" + token + "'");
    }
    return value;
}

bool parse_bool(const std::string &token, const std::string &key) {
    if (token == "true" || token == "1" || token == "yes") {
        return true;
    }
    if (token == "false" || token == "0" || token == "no") {
        return false;
    }
    throw ConfigError("bad boolean for " + key + ": '" + token + "'");
}

struct TimesSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    std::vector<double> list;
    bool grid_given = false;
};

void apply_key(RunConfig &config, TimesSpec &times, const std::string &key,
               const std::string &value) {
    if (key == "scenario.label") {
        config.label = value;
    } else if (key == "scenario.model") {
        if (value != "xy" && value != "disordered" && value != "none") {
            throw ConfigError("scenario.model must be xy, disordered or none");
        }
        config.model = value;
    } else if (key == "scenario.n_sites") {
        config.n_sites = parse_int(value, key);
    } else if (key == "scenario.j0") {
        config.j0 = parse_angle_or_number(value, key);
    } else if (key == "scenario.alpha") {
        config.alpha = parse_angle_or_number(value, key);
    } else if (key == "scenario.gamma") {
        config.gamma = parse_angle_or_number(value, key);
    } else if (key == "scenario.t_coh") {
        const double t_coh = parse_angle_or_number(value, key);
        if (t_coh <= 0.0) {
            throw ConfigError("scenario.t_coh must be > 0");
        }
        config.gamma = 1.0 / (2.0 * t_coh);
    } else if (key == "scenario.thetas") {
        config.thetas.clear();
        for (const auto &item : split_list(value)) {
            config.thetas.push_back(parse_angle_or_number(item, key));
        }
    } else if (key == "scenario.echo") {
        config.echo = parse_bool(value, key);
    } else if (key == "times.start") {
        times.start = parse_angle_or_number(value, key);
        times.grid_given = true;
    } else if (key == "times.stop") {
        times.stop = parse_angle_or_number(value, key);
        times.grid_given = true;
    } else if (key == "times.count") {
        times.count = parse_int(value, key);
        times.grid_given = true;
    } else if (key == "times.list") {
        times.list.clear();
        for (const auto &item : split_list(value)) {
            times.list.push_back(parse_angle_or_number(item, key));
        }
    } else if (key == "disorder.w") {
        config.disorder_w = parse_angle_or_number(value, key);
    } else if (key == "disorder.realizations") {
        config.disorder_realizations = parse_int(value, key);
    } else if (key == "disorder.seed") {
        config.disorder_seed = parse_u64(value, key);
    } else if (key == "disorder.files") {
        config.disorder_files = split_list(value);
    } else if (key == "sweep.gammas") {
        config.sweep_gammas.clear();
        for (const auto &item : split_list(value)) {
            config.sweep_gammas.push_back(parse_angle_or_number(item, key));
        }
    } else if (key == "budget.n_u") {
        config.n_u = parse_int(value, key);
    } else if (key == "budget.n_m") {
        config.n_m = parse_int(value, key);
    } else if (key == "budget.seed") {
        config.seed = parse_u64(value, key);
    } else if (key == "subsystems.mode") {
        if (value == "connected") {
            config.subsystems.mode = SubsystemSpec::Mode::kConnected;
        } else if (value == "pool") {
            config.subsystems.mode = SubsystemSpec::Mode::kPool;
        } else {
            throw ConfigError("subsystems.mode must be connected or pool");
        }
    } else if (key == "subsystems.n_a") {
        config.subsystems.n_a = parse_int(value, key);
    } else if (key == "subsystems.pool") {
        config.subsystems.pool.clear();
        for (const auto &item : split_list(value)) {
            config.subsystems.pool.push_back(parse_int(item, key));
        }
    } else if (key == "estimate.reference") {
        if (value != "none" && value != "scenario") {
            throw ConfigError("estimate.reference must be none or scenario");
        }
        config.reference = value;
    } else if (key == "output.dir") {
        config.out_dir = value;
    } else if (key == "output.export_de") {
        config.export_de = parse_bool(value, key);
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

void finish_times(RunConfig &config, const TimesSpec &times,
                  const std::string &source_name) {
    if (!times.list.empty()) {
        if (times.grid_given) {
            throw ConfigError(source_name +
                              ": give either times.list or a start/stop/count grid");
        }
        config.times = times.list;
        return;
    }
    if (times.grid_given) {
        if (times.count < 1) {
            throw ConfigError(source_name + ": times.count must be >= 1");
        }
        config.times.clear();
        for (int i = 0; i < times.count; ++i) {
            const double fraction =
                times.count == 1 ? 0.0
                                 : static_cast<double>(i) / (times.count - 1);
            config.times.push_back(times.start +
                                   fraction * (times.stop - times.start));
        }
    }
}

std::string config_dir_from_env() {
    const char *dir = std::getenv("QMPE_PRESET_DIR");
    return dir == nullptr ? "" : dir;
}

} // namespace

std::string find_preset_file(const std::string &name_or_path) {
    namespace fs = std::filesystem;
    if (fs::exists(name_or_path) && !fs::is_directory(name_or_path)) {
        return name_or_path;
    }
    std::vector<std::string> candidates;
    const std::string env_dir = config_dir_from_env();
    if (!env_dir.empty()) {
        candidates.push_back(env_dir + "/" + name_or_path + ".cfg");
    }
#ifdef QMPE_SOURCE_PRESET_DIR
    candidates.push_back(std::string(QMPE_SOURCE_PRESET_DIR) + "/" +
                         name_or_path + ".cfg");
#endif
    for (const auto &candidate : candidates) {
        if (fs::exists(candidate)) {
            return candidate;
        }
    }
    throw ConfigError("preset not found: " + name_or_path);
}

RunConfig parse_config_text(const std::string &text, const std::string &source_name) {
    // First pass: resolve scenario.preset so later keys override the preset.
    RunConfig config;
    TimesSpec times;
    std::istringstream stream(text);
    std::string line;
    std::vector<std::pair<std::string, std::string>> pairs;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source_name + " line " + std::to_string(line_number) +
                              ": expected key = value");
        }
        pairs.emplace_back(trim(stripped.substr(0, eq)),
                           trim(stripped.substr(eq + 1)));
    }
    for (const auto &[key, value] : pairs) {
        if (key == "scenario.preset") {
            config = load_preset(value);
        }
    }
    for (const auto &[key, value] : pairs) {
        if (key == "scenario.preset") {
            continue;
        }
        apply_key(config, times, key, value);
    }
    finish_times(config, times, source_name);
    return config;
}

RunConfig parse_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

RunConfig load_preset(const std::string &name_or_path) {
    const std::string path = find_preset_file(name_or_path);
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open preset: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (text.find("scenario.preset") != std::string::npos) {
        throw ConfigError(path + ": presets must not nest presets");
    }
    RunConfig config = parse_config_text(text, path);
    namespace fs = std::filesystem;
    config.preset = fs::path(path).stem().string();
    return config;
}

void validate_config(const RunConfig &config) {
    if (config.model != "xy" && config.model != "disordered" &&
        config.model != "none") {
        throw ConfigError("scenario.model must be xy, disordered or none");
    }
    if (config.n_sites < 2 || config.n_sites > 16) {
        throw ConfigError("scenario.n_sites must be in [2, 16]");
    }
    if (config.model != "none" && config.j0 <= 0.0) {
        throw ConfigError("scenario.j0 must be > 0");
    }
    if (config.model != "none" && config.alpha < 0.0) {
        throw ConfigError("scenario.alpha must be >= 0");
    }
    if (config.gamma < 0.0) {
        throw ConfigError("scenario.gamma must be >= 0");
    }
    if (config.thetas.empty()) {
        throw ConfigError("scenario.thetas must not be empty");
    }
    for (double theta : config.thetas) {
        if (theta < 0.0 || theta > kPi) {
            throw ConfigError("theta values must lie in [0, pi]");
        }
    }
    if (config.times.empty()) {
        throw ConfigError("times must not be empty");
    }
    for (std::size_t i = 0; i < config.times.size(); ++i) {
        if (config.times[i] < 0.0 || !std::isfinite(config.times[i])) {
            throw ConfigError("times must be finite and >= 0");
        }
        if (i > 0 && config.times[i] <= config.times[i - 1]) {
            throw ConfigError("times must be strictly increasing");
        }
    }
    if (config.model == "disordered") {
        if (config.disorder_files.empty()) {
            if (config.disorder_w <= 0.0) {
                throw ConfigError("disorder.w must be > 0");
            }
            if (config.disorder_realizations < 1) {
                throw ConfigError("disorder.realizations must be >= 1");
            }
        }
    }
    for (double gamma : config.sweep_gammas) {
        if (gamma < 0.0) {
            throw ConfigError("sweep.gammas must be >= 0");
        }
    }
    if (config.n_u < 2) {
        throw ConfigError("budget.n_u must be >= 2");
    }
    if (config.n_m < 1) {
        throw ConfigError("budget.n_m must be >= 1");
    }
    if (config.subsystems.n_a < 1) {
        throw ConfigError("subsystems.n_a must be >= 1");
    }
    // Throws on inconsistent pool/window parameters.
    try {
        const auto subsystems = enumerate_subsystems(config.n_sites, config.subsystems);
        for (const auto &sites : subsystems) {
            if (sites.size() >= static_cast<std::size_t>(config.n_sites)) {
                throw ConfigError("subsystems must be strict subsets of the chain");
            }
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("subsystems: ") + e.what());
    }
    if (config.reference != "none" && config.reference != "scenario") {
        throw ConfigError("estimate.reference must be none or scenario");
    }
    if (config.reference == "scenario" && config.model == "none") {
        throw ConfigError("estimate.reference = scenario needs a Hamiltonian model");
    }
    if (config.out_dir.empty()) {
        throw ConfigError("output.dir must not be empty");
    }
}

std::string canonical_text(const RunConfig &config) {
    std::ostringstream out;
    const auto list = [](const std::vector<double> &values) {
        std::string text;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) {
                text += ',';
            }
            text += format_double(values[i]);
        }
        return text;
    };
    out << "budget.n_m = " << config.n_m << '\n';
    out << "budget.n_u = " << config.n_u << '\n';
    out << "budget.seed = " << config.seed << '\n';
    out << "disorder.files = ";
    for (std::size_t i = 0; i < config.disorder_files.size(); ++i) {
        out << (i > 0 ? "," : "") << config.disorder_files[i];
    }
    out << '\n';
    out << "disorder.realizations = " << config.disorder_realizations << '\n';
    out << "disorder.seed = " << config.disorder_seed << '\n';
    out << "disorder.w = " << format_double(config.disorder_w) << '\n';
    out << "estimate.reference = " << config.reference << '\n';
    out << "output.dir = " << config.out_dir << '\n';
    out << "output.export_de = " << (config.export_de ? "true" : "false") << '\n';
    out << "scenario.alpha = " << format_double(config.alpha) << '\n';
    out << "scenario.echo = " << (config.echo ? "true" : "false") << '\n';
    out << "scenario.gamma = " << format_double(config.gamma) << '\n';
    out << "scenario.j0 = " << format_double(config.j0) << '\n';
    out << "scenario.label = " << config.label << '\n';
    out << "scenario.model = " << config.model << '\n';
    out << "scenario.n_sites = " << config.n_sites << '\n';
    out << "scenario.thetas = " << list(config.thetas) << '\n';
    out << "subsystems.mode = "
        << (config.subsystems.mode == SubsystemSpec::Mode::kConnected ? "connected"
                                                                      : "pool")
        << '\n';
    out << "subsystems.n_a = " << config.subsystems.n_a << '\n';
    out << "subsystems.pool = ";
    for (std::size_t i = 0; i < config.subsystems.pool.size(); ++i) {
        out << (i > 0 ? "," : "") << config.subsystems.pool[i];
    }
    out << '\n';
    out << "sweep.gammas = " << list(config.sweep_gammas) << '\n';
    out << "times.list = " << list(config.times) << '\n';
    return out.str();
}

std::string config_hash(const RunConfig &config) {
    return fnv1a_hex(canonical_text(config));
}

QuenchScenario make_scenario(const RunConfig &config, const std::vector<double> &h,
                             const std::string &label) {
    QuenchScenario scenario;
    scenario.n_sites = config.n_sites;
    scenario.gamma = config.gamma;
    scenario.times = config.times;
    scenario.echo = config.echo;
    scenario.label = label.empty() ? config.label : label;
    if (config.model == "xy") {
        scenario.spec = build_xy(config.n_sites, config.j0, config.alpha);
    } else if (config.model == "disordered") {
        scenario.spec = build_disordered(config.n_sites, config.j0, config.alpha, h);
    }
    if (!config.thetas.empty()) {
        scenario.theta = config.thetas.front();
    }
    return scenario;
}

} // namespace qmpe

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

#include "qmpe/io.hpp"

#include "qmpe/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace qmpe {

namespace {

using nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open for reading: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << text;
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

std::vector<std::string> split_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            if (start < text.size()) {
                lines.push_back(text.substr(start));
            }
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string> split_tokens(const std::string &line) {
    std::vector<std::string> tokens;
    std::istringstream stream(line);
    std::string token;
    while (stream >> token) {
        tokens.push_back(token);
    }
    return tokens;
}

std::vector<std::string> split_csv_fields(const std::string &line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v,
                                      std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

double parse_double(const std::string &token) {
    if (token == "nan" || token.empty()) {
        return kNan;
    }
    if (token == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (token == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double value = 0.0;
    const auto result =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
        throw DataError("malformed number: '" + token + "'");
    }
    return value;
}

std::string rmds_to_string(const RMDataset &dataset) {
    const RMHeader &h = dataset.header;
    json header;
    header["format"] = "rmds-1";
    header["n_sites"] = h.n_sites;
    header["theta"] = h.theta;
    header["time"] = h.time;
    header["scenario"] = h.scenario;
    header["gamma"] = h.gamma;
    header["seed"] = h.seed;
    header["n_u"] = h.n_u;
    header["n_m"] = h.n_m;
    std::string out = header.dump();
    out += '\n';
    for (const RMRecord &record : dataset.records) {
        std::string line;
        for (const LocalUnitary &u : record.unitaries) {
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    line += format_double(u.entries(r, c).real());
                    line += ' ';
                    line += format_double(u.entries(r, c).imag());
                    line += ' ';
                }
            }
        }
        line += '|';
        for (std::uint64_t bits : record.bitstrings) {
            line += ' ';
            for (int site = 1; site <= h.n_sites; ++site) {
                line += static_cast<char>('0' + bit_at(bits, site, h.n_sites));
            }
        }
        out += line;
        out += '\n';
    }
    return out;
}

void write_rmds(const std::string &path, const RMDataset &dataset) {
    write_file(path, rmds_to_string(dataset));
}

RMDataset parse_rmds(const std::string &text, const std::string &source_name) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) {
        throw DataError(source_name + ": empty dataset");
    }
    RMDataset dataset;
    try {
        const json header = json::parse(lines.front());
        if (header.at("format").get<std::string>() != "rmds-1") {
            throw DataError(source_name + ": unsupported format");
        }
        dataset.header.n_sites = header.at("n_sites").get<int>();
        dataset.header.theta = header.at("theta").get<double>();
        dataset.header.time = header.at("time").get<double>();
        dataset.header.scenario = header.at("scenario").get<std::string>();
        dataset.header.gamma = header.at("gamma").get<double>();
        dataset.header.seed = header.at("seed").get<std::uint64_t>();
        dataset.header.n_u = header.at("n_u").get<int>();
        dataset.header.n_m = header.at("n_m").get<int>();
    } catch (const json::exception &e) {
        throw DataError(source_name + " line 1: bad header: " + e.what());
    }
    const int n = dataset.header.n_sites;
    if (n < 1 || n > 24) {
        throw DataError(source_name + " line 1: bad n_sites");
    }
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string &line = lines[li];
        if (line.empty()) {
            continue;
        }
        const std::string location =
            source_name + " line " + std::to_string(li + 1);
        const std::size_t bar = line.find('|');
        if (bar == std::string::npos) {
            throw DataError(location + ": missing '|' separator");
        }
        const std::vector<std::string> unitary_tokens =
            split_tokens(line.substr(0, bar));
        if (unitary_tokens.size() != static_cast<std::size_t>(8 * n)) {
            throw DataError(location + ": expected " + std::to_string(8 * n) +
                            " unitary entries");
        }
        RMRecord record;
        record.unitaries.reserve(static_cast<std::size_t>(n));
        std::size_t tok = 0;
        for (int site = 1; site <= n; ++site) {
            Eigen::Matrix2cd u;
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    double re;
                    double im;
                    try {
                        re = parse_double(unitary_tokens[tok]);
                        im = parse_double(unitary_tokens[tok + 1]);
                    } catch (const DataError &e) {
                        throw DataError(location + ": " + e.what());
                    }
                    tok += 2;
                    u(r, c) = Complex(re, im);
                }
            }
            if ((u.adjoint() * u - Eigen::Matrix2cd::Identity())
                    .cwiseAbs()
                    .maxCoeff() > 1e-10) {
                throw DataError(location + ": unitary check failed for site " +
                                std::to_string(site));
            }
            record.unitaries.push_back(LocalUnitary{site, u});
        }
        for (const std::string &bits : split_tokens(line.substr(bar + 1))) {
            if (bits.size() != static_cast<std::size_t>(n)) {
                throw DataError(location + ": bitstring length != n_sites");
            }
            std::uint64_t value = 0;
            for (char ch : bits) {
                if (ch != '0' && ch != '1') {
                    throw DataError(location + ": bitstring must be 0/1 text");
                }
                value = (value << 1) | static_cast<std::uint64_t>(ch - '0');
            }
            record.bitstrings.push_back(value);
        }
        if (record.bitstrings.size() != static_cast<std::size_t>(dataset.header.n_m)) {
            throw DataError(location + ": expected " +
                            std::to_string(dataset.header.n_m) + " bitstrings");
        }
        dataset.records.push_back(std::move(record));
    }
    if (dataset.records.size() != static_cast<std::size_t>(dataset.header.n_u)) {
        throw DataError(source_name + ": record count does not match n_u");
    }
    return dataset;
}

RMDataset read_rmds(const std::string &path) {
    return parse_rmds(read_file(path), path);
}

void write_disorder(const std::string &path, const std::vector<double> &h) {
    std::string text;
    for (double v : h) {
        text += format_double(v);
        text += '\n';
    }
    write_file(path, text);
}

std::vector<double> read_disorder(const std::string &path) {
    std::vector<double> h;
    for (const std::string &line : split_lines(read_file(path))) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        try {
            h.push_back(parse_double(line));
        } catch (const DataError &e) {
            throw DataError(path + ": " + e.what());
        }
    }
    if (h.empty()) {
        throw DataError(path + ": no disorder values");
    }
    return h;
}

void write_subsystem_density(const std::string &path, const SubsystemDensity &rho) {
    json header;
    header["format"] = "demat-1";
    header["sites"] = rho.sites;
    header["dim"] = rho.matrix.rows();
    std::string out = header.dump();
    out += '\n';
    for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r) {
        std::string line;
        for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c) {
            if (c > 0) {
                line += ' ';
            }
            line += format_double(rho.matrix(r, c).real());
            line += ' ';
            line += format_double(rho.matrix(r, c).imag());
        }
        out += line;
        out += '\n';
    }
    write_file(path, out);
}

SubsystemDensity read_subsystem_density(const std::string &path) {
    const std::vector<std::string> lines = split_lines(read_file(path));
    if (lines.empty()) {
        throw DataError(path + ": empty matrix file");
    }
    SubsystemDensity rho;
    Eigen::Index dim = 0;
    try {
        const json header = json::parse(lines.front());
        if (header.at("format").get<std::string>() != "demat-1") {
            throw DataError(path + ": unsupported format");
        }
        rho.sites = header.at("sites").get<std::vector<int>>();
        dim = header.at("dim").get<Eigen::Index>();
    } catch (const json::exception &e) {
        throw DataError(path + " line 1: bad header: " + e.what());
    }
    if (dim < 1 || lines.size() < static_cast<std::size_t>(dim) + 1) {
        throw DataError(path + ": truncated matrix");
    }
    rho.matrix.resize(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const std::string location =
            path + " line " + std::to_string(r + 2);
        const auto tokens = split_tokens(lines[static_cast<std::size_t>(r) + 1]);
        if (tokens.size() != static_cast<std::size_t>(2 * dim)) {
            throw DataError(location + ": expected " + std::to_string(2 * dim) +
                            " entries");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            try {
                rho.matrix(r, c) =
                    Complex(parse_double(tokens[static_cast<std::size_t>(2 * c)]),
                            parse_double(tokens[static_cast<std::size_t>(2 * c + 1)]));
            } catch (const DataError &e) {
                throw DataError(location + ": " + e.what());
            }
        }
    }
    return rho;
}

void write_estimate_csv(const std::string &path, const std::string &manifest_json,
                        const std::vector<EstimateRow> &rows) {
    std::string out = "# manifest ";
    out += manifest_json;
    out += '\n';
    out += "t,theta,subsystem,EA,EA_err,FD,FD_err,n_excluded,source\n";
    for (const EstimateRow &row : rows) {
        out += format_double(row.t);
        out += ',';
        out += format_double(row.theta);
        out += ',';
        out += row.subsystem;
        out += ',';
        out += format_double(row.ea);
        out += ',';
        out += format_double(row.ea_err);
        out += ',';
        out += format_double(row.fd);
        out += ',';
        out += format_double(row.fd_err);
        out += ',';
        out += std::to_string(row.n_excluded);
        out += ',';
        out += row.source;
        out += '\n';
    }
    write_file(path, out);
}

EstimateCsv read_estimate_csv(const std::string &path) {
    const std::vector<std::string> lines = split_lines(read_file(path));
    EstimateCsv csv;
    std::size_t li = 0;
    if (li < lines.size() && lines[li].rfind("# manifest ", 0) == 0) {
        csv.manifest = lines[li].substr(std::string("# manifest ").size());
        ++li;
    }
    if (li >= lines.size() ||
        lines[li] != "t,theta,subsystem,EA,EA_err,FD,FD_err,n_excluded,source") {
        throw DataError(path + ": unexpected CSV schema");
    }
    ++li;
    for (; li < lines.size(); ++li) {
        if (lines[li].empty()) {
            continue;
        }
        const std::string location = path + " line " + std::to_string(li + 1);
        const auto fields = split_csv_fields(lines[li]);
        if (fields.size() != 9) {
            throw DataError(location + ": expected 9 fields");
        }
        EstimateRow row;
        try {
            row.t = parse_double(fields[0]);
            row.theta = parse_double(fields[1]);
            row.subsystem = fields[2];
            row.ea = parse_double(fields[3]);
            row.ea_err = parse_double(fields[4]);
            row.fd = parse_double(fields[5]);
            row.fd_err = parse_double(fields[6]);
            row.n_excluded = static_cast<int>(parse_double(fields[7]));
            row.source = fields[8];
        } catch (const DataError &e) {
            throw DataError(location + ": " + e.what());
        }
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

std::vector<EstimateSeries> collect_series(const std::vector<EstimateRow> &rows,
                                           const std::string &quantity) {
    std::vector<EstimateSeries> series;
    const auto find = [&](double theta, const std::string &subsystem) -> EstimateSeries & {
        for (auto &s : series) {
            if (s.label.theta == theta && s.label.subsystem == subsystem) {
                return s;
            }
        }
        series.push_back(EstimateSeries{});
        series.back().label = SeriesLabel{theta, subsystem, -1, quantity};
        return series.back();
    };
    for (const EstimateRow &row : rows) {
        EstimateSeries &s = find(row.theta, row.subsystem);
        s.times.push_back(row.t);
        s.values.push_back(quantity == "FD" ? row.fd : row.ea);
        s.errors.push_back(quantity == "FD" ? row.fd_err : row.ea_err);
    }
    return series;
}

std::string fnv1a_hex(const std::string &text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buffer[17];
    for (int i = 15; i >= 0; --i) {
        buffer[i] = "0123456789abcdef"[hash & 0xF];
        hash >>= 4;
    }
    buffer[16] = '\0';
    return std::string(buffer);
}

} // namespace qmpe

/*
 * Copyright 2026 The gpsc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "gpsc/csv.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace gpsc {

std::string format_double(double v) {
    std::array<char, 40> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string format_shortest(double v) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string_view trim(std::string_view s) noexcept {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    return v;
}

long long parse_int(std::string_view s) {
    s = trim(s);
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    }
    return v;
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::invalid_argument("csv: missing column '" + std::string(name) + "'");
}

std::vector<double> CsvTable::column_values(std::string_view name) const {
    const auto c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) out.push_back(r.at(c));
    return out;
}

std::string CsvTable::metadata_value(std::string_view key) const {
    for (const auto &line : metadata) {
        for (auto field : split(line, ' ')) {
            const auto eq = field.find('=');
            if (eq != std::string_view::npos && field.substr(0, eq) == key) {
                return std::string(field.substr(eq + 1));
            }
        }
    }
    return {};
}

CsvTable read_csv(std::istream &in) {
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto view = trim(line);
        if (view.empty()) continue;
        if (view.front() == '#') {
            t.metadata.emplace_back(trim(view.substr(1)));
            continue;
        }
        const auto fields = split(view, ',');
        if (t.header.empty()) {
            for (auto f : fields) t.header.emplace_back(f);
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw std::invalid_argument("csv: line " + std::to_string(lineno) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(t.header.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto f : fields) row.push_back(parse_double(f));
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw std::invalid_argument("csv: no header row");
    return t;
}

CsvTable read_csv_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return read_csv(in);
}

void write_csv(std::ostream &out, const CsvTable &table) {
    for (const auto &m : table.metadata) out << "# " << m << '\n';
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

void write_partition_csv(std::ostream &out, const Partition &p) {
    CsvTable t;
    t.metadata.push_back("T=" + format_double(p.domain_length()));
    t.header = {"x"};
    for (double x : p.points()) t.rows.push_back({x});
    write_csv(out, t);
}

Partition read_partition_csv(std::istream &in) {
    const auto t = read_csv(in);
    const auto T = t.metadata_value("T");
    if (T.empty()) throw std::invalid_argument("partition csv: missing '# T=' header");
    auto xs = t.column_values("x");
    const double T_val = parse_double(T);
    if (!xs.empty() && xs.back() < T_val) return Partition::unanchored(T_val, std::move(xs));
    return Partition(T_val, std::move(xs));
}

} // namespace gpsc

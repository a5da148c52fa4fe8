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

#include "io.hpp"

#include <stdexcept>

#include "gpsc/csv.hpp"

namespace gpsc::cli {

std::filesystem::path OutputDir::resolve(const std::string &name) const {
    const std::filesystem::path p(name);
    return p.is_absolute() ? p : root_ / p;
}

std::ofstream OutputDir::open(const std::string &name) const {
    const auto path = resolve(name);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

PathSample read_data_csv(const std::string &path) {
    const auto table = read_csv_file(path);
    const auto T = table.metadata_value("T");
    if (T.empty()) throw std::invalid_argument(path + ": missing '# T=' header line");
    auto xs = table.column_values("x");
    auto fs = table.column_values("f");
    if (xs.empty()) throw std::invalid_argument(path + ": no data rows");
    const double length = parse_double(T);
    Partition p = xs.back() < length ? Partition::unanchored(length, std::move(xs)) : Partition(length, std::move(xs));
    Provenance prov;
    prov.process = table.metadata_value("process");
    const auto seed = table.metadata_value("seed");
    if (!seed.empty()) prov.seed = static_cast<std::uint64_t>(parse_int(seed));
    return make_sample(std::move(p), std::move(fs), std::move(prov));
}

void write_sample_csv(std::ostream &out, const PathSample &s, const std::vector<std::string> &metadata) {
    CsvTable t;
    t.metadata.push_back("T=" + format_double(s.partition.domain_length()) + " process=" + s.provenance.process +
                         " seed=" + std::to_string(s.provenance.seed));
    t.metadata.insert(t.metadata.end(), metadata.begin(), metadata.end());
    t.header = {"x", "f"};
    for (std::size_t i = 0; i < s.size(); ++i) t.rows.push_back({s.partition.x(i + 1), s.values[i]});
    write_csv(out, t);
}

void write_row(std::ostream &out, const std::vector<std::string> &fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
}

} // namespace gpsc::cli

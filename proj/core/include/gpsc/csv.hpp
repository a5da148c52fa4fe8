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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gpsc/partition.hpp"

namespace gpsc {

/// 17 significant digits; the output format for every numeric CSV field.
[[nodiscard]] std::string format_double(double v);
/// Shortest representation that round-trips (used in labels and specs).
[[nodiscard]] std::string format_shortest(double v);

[[nodiscard]] double parse_double(std::string_view s);
[[nodiscard]] long long parse_int(std::string_view s);
[[nodiscard]] std::string_view trim(std::string_view s) noexcept;
[[nodiscard]] std::vector<std::string_view> split(std::string_view s, char sep);

/// Numeric CSV with '#'-prefixed metadata lines and one header row.
struct CsvTable {
    std::vector<std::string> metadata;  // without the leading "# "
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a named column; throws std::invalid_argument if absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
    [[nodiscard]] std::vector<double> column_values(std::string_view name) const;
    /// Value of a "key=value" metadata entry, if present.
    [[nodiscard]] std::string metadata_value(std::string_view key) const;
};

[[nodiscard]] CsvTable read_csv(std::istream &in);
[[nodiscard]] CsvTable read_csv_file(const std::string &path);
void write_csv(std::ostream &out, const CsvTable &table);

/// "# T=<value>" header line followed by an "x" column.
void write_partition_csv(std::ostream &out, const Partition &p);
[[nodiscard]] Partition read_partition_csv(std::istream &in);

} // namespace gpsc

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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gpsc/sampling.hpp"

namespace gpsc::cli {

/// Output root given by --out. Files are created relative to it.
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path root) : root_(std::move(root)) {}

    [[nodiscard]] std::filesystem::path resolve(const std::string &name) const;
    /// Opens `name` for writing, creating parent directories.
    [[nodiscard]] std::ofstream open(const std::string &name) const;

private:
    std::filesystem::path root_;
};

/// Reads an `x,f` CSV with a `# T=` header line, as written by `sample`.
[[nodiscard]] PathSample read_data_csv(const std::string &path);

/// Writes `# T=<T> process=<spec> seed=<s>` plus extra metadata, then `x,f` rows.
void write_sample_csv(std::ostream &out, const PathSample &s, const std::vector<std::string> &metadata);

/// Comma-joined row of already formatted fields.
void write_row(std::ostream &out, const std::vector<std::string> &fields);

} // namespace gpsc::cli

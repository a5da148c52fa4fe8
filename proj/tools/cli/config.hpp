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

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gpsc::cli {

/// A value in a flat-key config file: scalar or one-level array.
using ConfigScalar = std::variant<bool, double, std::string>;
using ConfigValue = std::variant<bool, double, std::string, std::vector<ConfigScalar>>;

/// Flat `key = value` configuration in TOML syntax: strings, numbers,
/// booleans, single-line arrays, `#` comments. A `[table]` header prefixes
/// the following keys with "table.". Unknown keys are reported by `check_keys`.
class FlatConfig {
public:
    static FlatConfig parse(std::istream &in, const std::string &origin = "<config>");
    static FlatConfig load(const std::string &path);

    void set(const std::string &key, ConfigValue value) { values_[key] = std::move(value); }
    [[nodiscard]] bool has(const std::string &key) const { return values_.count(key) != 0; }

    [[nodiscard]] std::string get_string(const std::string &key, const std::string &fallback) const;
    [[nodiscard]] std::optional<std::string> get_string(const std::string &key) const;
    [[nodiscard]] double get_double(const std::string &key, double fallback) const;
    [[nodiscard]] std::int64_t get_int(const std::string &key, std::int64_t fallback) const;
    [[nodiscard]] std::uint64_t get_uint(const std::string &key, std::uint64_t fallback) const;
    [[nodiscard]] bool get_bool(const std::string &key, bool fallback) const;
    [[nodiscard]] std::vector<std::string> get_strings(const std::string &key,
                                                       const std::vector<std::string> &fallback) const;
    [[nodiscard]] std::vector<std::int64_t> get_ints(const std::string &key) const;

    /// Throws std::invalid_argument naming the first key not in `allowed`.
    void check_keys(const std::vector<std::string> &allowed) const;

    /// One `key = value` line per entry, sorted by key, numbers printed with
    /// 17 significant digits. Equal configs give equal text.
    [[nodiscard]] std::string canonical() const;
    /// FNV-1a 64-bit hash of `canonical()`, as 16 hex digits.
    [[nodiscard]] std::string hash() const;

private:
    std::map<std::string, ConfigValue> values_;
};

[[nodiscard]] std::uint64_t fnv1a64(const std::string &text) noexcept;

} // namespace gpsc::cli

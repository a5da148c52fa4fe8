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

#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gpsc/csv.hpp"

namespace gpsc::cli {

namespace {

[[noreturn]] void fail(const std::string &origin, std::size_t line, const std::string &what) {
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + what);
}

// Strips a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

ConfigScalar parse_scalar(std::string_view s, const std::string &origin, std::size_t line) {
    s = trim(s);
    if (s.empty()) fail(origin, line, "missing value");
    if (s == "true") return true;
    if (s == "false") return false;
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"') fail(origin, line, "unterminated string");
        std::string out;
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            if (s[i] == '\\' && i + 2 < s.size()) {
                ++i;
                out.push_back(s[i] == 'n' ? '\n' : s[i]);
            } else {
                out.push_back(s[i]);
            }
        }
        return out;
    }
    std::string digits;
    for (char c : s) {
        if (c != '_') digits.push_back(c);
    }
    try {
        return parse_double(digits);
    } catch (const std::invalid_argument &) {
        fail(origin, line, "cannot parse value '" + std::string(s) + "'");
    }
}

std::string render_scalar(const ConfigScalar &v) {
    if (const auto *b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    if (const auto *d = std::get_if<double>(&v)) return format_double(*d);
    return "\"" + std::get<std::string>(v) + "\"";
}

template <class T>
const T *typed(const std::map<std::string, ConfigValue> &m, const std::string &key, const char *type) {
    const auto it = m.find(key);
    if (it == m.end()) return nullptr;
    if (const auto *v = std::get_if<T>(&it->second)) return v;
    throw std::invalid_argument("config key '" + key + "' must be " + type);
}

} // namespace

FlatConfig FlatConfig::parse(std::istream &in, const std::string &origin) {
    FlatConfig cfg;
    std::string raw;
    std::string table;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) fail(origin, lineno, "malformed table header");
            table = std::string(trim(line.substr(1, line.size() - 2))) + ".";
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(origin, lineno, "expected key = value");
        const std::string key = table + std::string(trim(line.substr(0, eq)));
        if (key.empty() || key == table) fail(origin, lineno, "empty key");
        if (cfg.has(key)) fail(origin, lineno, "duplicate key '" + key + "'");
        const auto value = trim(line.substr(eq + 1));
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') fail(origin, lineno, "arrays must fit on one line");
            std::vector<ConfigScalar> items;
            const auto body = trim(value.substr(1, value.size() - 2));
            if (!body.empty()) {
                for (auto item : split(body, ',')) {
                    if (trim(item).empty()) continue;  // trailing comma
                    items.push_back(parse_scalar(item, origin, lineno));
                }
            }
            cfg.values_[key] = std::move(items);
        } else {
            std::visit([&](auto &&v) { cfg.values_[key] = v; }, parse_scalar(value, origin, lineno));
        }
    }
    return cfg;
}

FlatConfig FlatConfig::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    return parse(in, path);
}

std::optional<std::string> FlatConfig::get_string(const std::string &key) const {
    if (const auto *s = typed<std::string>(values_, key, "a string")) return *s;
    return std::nullopt;
}

std::string FlatConfig::get_string(const std::string &key, const std::string &fallback) const {
    return get_string(key).value_or(fallback);
}

double FlatConfig::get_double(const std::string &key, double fallback) const {
    const auto *d = typed<double>(values_, key, "a number");
    return d ? *d : fallback;
}

std::int64_t FlatConfig::get_int(const std::string &key, std::int64_t fallback) const {
    const auto *d = typed<double>(values_, key, "an integer");
    if (!d) return fallback;
    if (std::floor(*d) != *d || std::abs(*d) > 9.0e15) {
        throw std::invalid_argument("config key '" + key + "' must be an integer");
    }
    return static_cast<std::int64_t>(*d);
}

std::uint64_t FlatConfig::get_uint(const std::string &key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto v = get_int(key, 0);
    if (v < 0) throw std::invalid_argument("config key '" + key + "' must be non-negative");
    return static_cast<std::uint64_t>(v);
}

bool FlatConfig::get_bool(const std::string &key, bool fallback) const {
    const auto *b = typed<bool>(values_, key, "a boolean");
    return b ? *b : fallback;
}

std::vector<std::string> FlatConfig::get_strings(const std::string &key,
                                                 const std::vector<std::string> &fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (const auto *s = std::get_if<std::string>(&it->second)) return {*s};
    const auto *arr = std::get_if<std::vector<ConfigScalar>>(&it->second);
    if (!arr) throw std::invalid_argument("config key '" + key + "' must be a string or an array of strings");
    std::vector<std::string> out;
    for (const auto &v : *arr) {
        const auto *s = std::get_if<std::string>(&v);
        if (!s) throw std::invalid_argument("config key '" + key + "' must contain strings only");
        out.push_back(*s);
    }
    return out;
}

std::vector<std::int64_t> FlatConfig::get_ints(const std::string &key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return {};
    std::vector<std::int64_t> out;
    auto take = [&](const ConfigScalar &v) {
        const auto *d = std::get_if<double>(&v);
        if (!d || std::floor(*d) != *d) throw std::invalid_argument("config key '" + key + "' must contain integers");
        out.push_back(static_cast<std::int64_t>(*d));
    };
    if (const auto *arr = std::get_if<std::vector<ConfigScalar>>(&it->second)) {
        for (const auto &v : *arr) take(v);
    } else if (const auto *d = std::get_if<double>(&it->second)) {
        take(*d);
    } else {
        throw std::invalid_argument("config key '" + key + "' must be an array of integers");
    }
    return out;
}

void FlatConfig::check_keys(const std::vector<std::string> &allowed) const {
    for (const auto &[key, value] : values_) {
        bool ok = false;
        for (const auto &a : allowed) ok = ok || a == key;
        if (!ok) throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

std::string FlatConfig::canonical() const {
    std::ostringstream out;
    for (const auto &[key, value] : values_) {
        out << key << " = ";
        if (const auto *arr = std::get_if<std::vector<ConfigScalar>>(&value)) {
            out << '[';
            for (std::size_t i = 0; i < arr->size(); ++i) out << (i ? ", " : "") << render_scalar((*arr)[i]);
            out << ']';
        } else {
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (!std::is_same_v<T, std::vector<ConfigScalar>>) out << render_scalar(ConfigScalar{v});
                },
                value);
        }
        out << '\n';
    }
    return out.str();
}

std::uint64_t fnv1a64(const std::string &text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string FlatConfig::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
    return buf;
}

} // namespace gpsc::cli

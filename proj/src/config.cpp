// Copyright 2026 The cslheat Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#include "cslheat/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "cslheat/errors.hpp"

namespace cslheat {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream iss{std::string(s)};
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& token, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size())
            throw usage_error(context + ": trailing characters in number '" + token + "'");
        return v;
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception&) {
        throw usage_error(context + ": expected a number, got '" + token + "'");
    }
}

std::string sci(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.8e", x);
    return buf;
}

namespace {

double parse_with_units(const std::string& token, const char* what,
                        const std::vector<std::pair<std::string, double>>& units) {
    const std::string t = trim(token);
    for (const auto& [suffix, factor] : units) {
        if (t.size() > suffix.size() &&
            t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0) {
            const std::string num = trim(t.substr(0, t.size() - suffix.size()));
            // require the prefix to really be numeric ("m" alone, or "cm"
            // stripping to "c", must not slip through)
            try {
                std::size_t pos = 0;
                const double v = std::stod(num, &pos);
                if (pos == num.size()) return v * factor;
            } catch (const std::exception&) {
            }
        }
    }
    return parse_double(t, what);
}

} // namespace

double parse_length(const std::string& token) {
    return parse_with_units(token, "length",
                            {{"nm", 1e-9},
                             {"um", 1e-6},
                             {"mm", 1e-3},
                             {"cm", 1e-2},
                             {"A", 1e-10},
                             {"m", 1.0}});
}

double parse_temperature(const std::string& token) {
    return parse_with_units(token, "temperature", {{"mK", 1e-3}, {"K", 1.0}});
}

std::vector<ConfigSection> parse_config(std::istream& in) {
    std::vector<ConfigSection> sections;
    ConfigSection current; // unnamed preamble section
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string s = trim(line);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw usage_error("config line " + std::to_string(lineno) +
                                  ": malformed section header '" + s + "'");
            if (!current.name.empty() || !current.entries.empty())
                sections.push_back(std::move(current));
            current = ConfigSection{trim(s.substr(1, s.size() - 2)), {}};
            if (current.name.empty())
                throw usage_error("config line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw usage_error("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw usage_error("config line " + std::to_string(lineno) + ": empty key");
        current.entries.emplace_back(key, value);
    }
    if (!current.name.empty() || !current.entries.empty())
        sections.push_back(std::move(current));
    return sections;
}

std::vector<ConfigSection> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file '" + path + "'");
    return parse_config(in);
}

SectionReader::SectionReader(const ConfigSection& section)
    : name_(section.name), entries_(section.entries) {
    std::set<std::string> seen;
    for (const auto& [k, v] : entries_)
        if (!seen.insert(k).second)
            throw usage_error("section [" + name_ + "]: duplicate key '" + k + "'");
}

std::optional<std::string> SectionReader::get(const std::string& key) {
    for (const auto& [k, v] : entries_)
        if (k == key) {
            consumed_.insert(key);
            return v;
        }
    return std::nullopt;
}

std::string SectionReader::require(const std::string& key) {
    auto v = get(key);
    if (!v) throw usage_error("section [" + name_ + "]: missing required key '" + key + "'");
    return *v;
}

double SectionReader::require_double(const std::string& key) {
    return parse_double(require(key), "section [" + name_ + "] key '" + key + "'");
}

std::optional<double> SectionReader::get_double(const std::string& key) {
    auto v = get(key);
    if (!v) return std::nullopt;
    return parse_double(*v, "section [" + name_ + "] key '" + key + "'");
}

void SectionReader::finish() const {
    std::string unknown;
    for (const auto& [k, v] : entries_)
        if (!consumed_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
    if (!unknown.empty())
        throw usage_error("section [" + name_ + "]: unknown key(s): " + unknown);
}

} // namespace cslheat

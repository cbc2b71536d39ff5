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

#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cslheat {

/// Flat key-value text with [section] headers and '#' comments.
struct ConfigSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
};

std::vector<ConfigSection> parse_config(std::istream& in);
std::vector<ConfigSection> parse_config_file(const std::string& path);

/// Strict reader over one section: every key must be consumed, and
/// finish() rejects anything left over, so misspelled parameters fail
/// loudly instead of being ignored.
class SectionReader {
public:
    explicit SectionReader(const ConfigSection& section);

    std::optional<std::string> get(const std::string& key);
    std::string require(const std::string& key);
    double require_double(const std::string& key);
    std::optional<double> get_double(const std::string& key);
    void finish() const; // throws usage_error listing unknown keys

    const std::string& section_name() const { return name_; }

private:
    std::string name_;
    std::vector<std::pair<std::string, std::string>> entries_;
    std::set<std::string> consumed_;
};

// --- small text helpers shared by the file-format parsers ---

std::string trim(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
double parse_double(const std::string& token, const std::string& context);

/// Scientific notation with 9 significant digits; the one formatting
/// used for every emitted number.
std::string sci(double x);

/// Length with optional unit suffix: m (default), cm, mm, um, nm, A.
double parse_length(const std::string& token);
/// Temperature with optional unit suffix: K (default), mK.
double parse_temperature(const std::string& token);

} // namespace cslheat

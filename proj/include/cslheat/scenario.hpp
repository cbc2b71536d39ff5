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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cslheat/diffusion.hpp"
#include "cslheat/heating.hpp"
#include "cslheat/material.hpp"
#include "cslheat/noise.hpp"

namespace cslheat {

/// Spectrum selector as written in configs/CLI: "flat", "step:OMEGA",
/// "file:PATH".
struct SpectrumSpec {
    SpectrumKind kind = SpectrumKind::Flat;
    double cutoff = 0.0;    // rad/s, StepCutoff
    std::string table_path; // Tabulated

    static SpectrumSpec parse(const std::string& text);
    NoiseSpectrum make(const CslParams& p) const;
    std::string describe() const;
};

Geometry parse_geometry(const std::string& text); // "sphere:R|slab:L|cylinder:R"
std::string describe_geometry(const Geometry& g);

struct Scenario {
    std::string name;
    Material material;
    CslParams csl;
    SpectrumSpec spectrum;
    Geometry geometry;
    double t_surface = 0.0; // K
    double rate_tol = 1e-8;
    int profile_samples = 65;
    std::string output_dir = ".";
    std::uint64_t seed = 0;
};

/// Everything needed to reconstruct the run: echoed inputs (including
/// any defaults that were applied), the rate, the core temperatures,
/// and where the profile CSV went.
struct RunReport {
    std::vector<std::pair<std::string, std::string>> inputs; // echo, insertion order
    HeatingRate rate;
    double core_delta_exact = 0.0;
    double core_delta_linearized = 0.0;
    double core_temperature_exact = 0.0;
    double core_temperature_linearized = 0.0;
    std::string profile_path;
    std::uint64_t seed = 0;
    std::string version;

    std::string to_csv() const;  // key-value rows
    std::string to_json() const; // single object
};

/// rate -> profile -> report. Writes "<output_dir>/<name>_profile.csv"
/// unless output_dir is empty ("-" keeps the profile out of a file).
RunReport run_scenario(const Scenario& s);

/// One report per value, rows in input order. param is one of
/// "lambda" | "rc" | "cutoff" (cutoff requires a step spectrum).
std::vector<RunReport> sweep(const Scenario& s, const std::string& param,
                             const std::vector<double>& values);
std::string sweep_to_csv(const std::vector<RunReport>& rows);

Scenario builtin_scenario(const std::string& name); // "cu-cuore" | "teo2-cuore"
Scenario scenario_from_config_file(const std::string& path);

std::string profile_to_csv(const TemperatureProfile& p);

} // namespace cslheat

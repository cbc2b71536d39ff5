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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cslheat {

/// Crystal parameter record, SI units throughout. Immutable after
/// construction; share freely across threads.
struct Material {
    std::string name;
    double density = 0.0;               // kg/m^3
    std::vector<double> cell_masses;    // kg, one entry per atom of the primitive cell
    double lattice_param = 0.0;         // m
    double v_eff = 0.0;                 // m/s, effective sound velocity
    double k0 = 0.0;                    // W/(m K^2), coefficient in k = k0*T
    double primitive_cell_volume = 0.0; // m^3

    /// Fields that were filled from non-tabulated defaults rather than
    /// measured data; echoed into run reports so nothing is injected
    /// silently.
    std::vector<std::string> default_filled_fields;

    double cell_mass() const; // sum over cell_masses [kg]
    void validate() const;    // throws std::invalid_argument
};

/// Debye frequency v_eff * (6 pi^2 / V0)^(1/3)  [rad/s]
double debye_frequency(const Material& mat);

/// Built-in records: "Cu" and "TeO2". Unknown names throw not_found_error.
/// v_eff is not tabulated for either; the defaults (Cu 4760 m/s,
/// TeO2 3000 m/s) are flagged in default_filled_fields.
Material builtin_material(std::string_view name);

struct MaterialOverrides {
    std::optional<double> density;
    std::optional<double> v_eff;
    std::optional<double> k0;
    std::optional<double> lattice_param;
};

Material apply_overrides(Material mat, const MaterialOverrides& ov);

/// Material database file: one [Name] section per material with
/// key = value lines. Keys: density, lattice_param, v_eff, k0,
/// cell_masses_amu (space-separated list), primitive_cell_volume
/// (optional; defaults to cell mass / density).
std::map<std::string, Material> load_material_db(std::istream& in);
Material load_material(const std::string& path, const std::string& name);

} // namespace cslheat

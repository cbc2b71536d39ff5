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

#include "cslheat/material.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "cslheat/config.hpp"
#include "cslheat/constants.hpp"
#include "cslheat/errors.hpp"

namespace cslheat {

double Material::cell_mass() const {
    return std::accumulate(cell_masses.begin(), cell_masses.end(), 0.0);
}

void Material::validate() const {
    if (!(density > 0.0)) throw std::invalid_argument("material '" + name + "': density must be > 0");
    if (cell_masses.empty()) throw std::invalid_argument("material '" + name + "': needs at least one cell mass");
    for (double m : cell_masses)
        if (!(m > 0.0)) throw std::invalid_argument("material '" + name + "': cell masses must be > 0");
    if (!(lattice_param > 0.0)) throw std::invalid_argument("material '" + name + "': lattice_param must be > 0");
    if (!(v_eff > 0.0)) throw std::invalid_argument("material '" + name + "': v_eff must be > 0");
    if (!(k0 > 0.0)) throw std::invalid_argument("material '" + name + "': k0 must be > 0");
    if (!(primitive_cell_volume > 0.0))
        throw std::invalid_argument("material '" + name + "': primitive_cell_volume must be > 0");
}

double debye_frequency(const Material& mat) {
    mat.validate();
    return mat.v_eff * std::cbrt(6.0 * M_PI * M_PI / mat.primitive_cell_volume);
}

Material builtin_material(std::string_view name) {
    const double amu = constants.m0;
    if (name == "Cu") {
        Material m;
        m.name = "Cu";
        m.density = 8.90e3;
        m.cell_masses = {63.546 * amu}; // mono-atomic fcc, one atom per primitive cell
        m.lattice_param = 3.61478e-10;  // conventional cubic cell at 298 K
        m.primitive_cell_volume = m.lattice_param * m.lattice_param * m.lattice_param / 4.0; // fcc: a^3/4
        m.v_eff = 4760.0;               // effective sound velocity, not tabulated; default
        m.k0 = 80.0;                    // low end of the 80-170 W/(m K^2) range
        m.default_filled_fields = {"v_eff"};
        m.validate();
        return m;
    }
    if (name == "TeO2") {
        Material m;
        m.name = "TeO2";
        m.density = 6.0e3; // 750 g in a 5 cm cube
        // paratellurite primitive cell: 4 Te + 8 O
        m.cell_masses.assign(4, 127.60 * amu);
        m.cell_masses.insert(m.cell_masses.end(), 8, 15.999 * amu);
        m.lattice_param = 4.8082e-10; // tetragonal a axis
        m.primitive_cell_volume = m.cell_mass() / m.density;
        m.v_eff = 3000.0; // not tabulated; default
        m.k0 = 3.0;
        m.default_filled_fields = {"v_eff", "lattice_param"};
        m.validate();
        return m;
    }
    throw not_found_error("unknown material '" + std::string(name) + "' (built-ins: Cu, TeO2)");
}

Material apply_overrides(Material mat, const MaterialOverrides& ov) {
    auto clear_default = [&mat](const char* field) {
        auto& v = mat.default_filled_fields;
        v.erase(std::remove(v.begin(), v.end(), field), v.end());
    };
    if (ov.density) {
        mat.density = *ov.density;
        clear_default("density");
    }
    if (ov.v_eff) {
        mat.v_eff = *ov.v_eff;
        clear_default("v_eff");
    }
    if (ov.k0) {
        mat.k0 = *ov.k0;
        clear_default("k0");
    }
    if (ov.lattice_param) {
        mat.lattice_param = *ov.lattice_param;
        clear_default("lattice_param");
    }
    mat.validate();
    return mat;
}

std::map<std::string, Material> load_material_db(std::istream& in) {
    std::map<std::string, Material> db;
    for (const auto& section : parse_config(in)) {
        if (section.name.empty())
            throw usage_error("material db: entries before the first [Name] section");
        SectionReader r(section);
        Material m;
        m.name = section.name;
        m.density = r.require_double("density");
        m.lattice_param = parse_length(r.require("lattice_param"));
        m.v_eff = r.require_double("v_eff");
        m.k0 = r.require_double("k0");
        for (const auto& tok : split_ws(r.require("cell_masses_amu")))
            m.cell_masses.push_back(parse_double(tok, "cell_masses_amu") * constants.m0);
        if (auto v = r.get_double("primitive_cell_volume"))
            m.primitive_cell_volume = *v;
        else
            m.primitive_cell_volume = m.cell_mass() / m.density;
        r.finish();
        m.validate();
        db.emplace(m.name, std::move(m));
    }
    return db;
}

Material load_material(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open material db '" + path + "'");
    auto db = load_material_db(in);
    auto it = db.find(name);
    if (it == db.end())
        throw not_found_error("material '" + name + "' not found in '" + path + "'");
    return it->second;
}

} // namespace cslheat

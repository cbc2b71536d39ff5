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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cslheat/errors.hpp"
#include "cslheat/material.hpp"

using namespace cslheat;

TEST_CASE("builtin copper record") {
    const Material cu = builtin_material("Cu");
    CHECK(cu.density == doctest::Approx(8.90e3));
    CHECK(cu.lattice_param == doctest::Approx(3.61478e-10));
    // fcc primitive cell is a^3/4
    CHECK(cu.primitive_cell_volume ==
          doctest::Approx(std::pow(3.61478e-10, 3) / 4.0).epsilon(1e-14));
    CHECK(cu.cell_masses.size() == 1);
    CHECK(cu.k0 == doctest::Approx(80.0));
    // v_eff is a default, must be flagged
    REQUIRE(cu.default_filled_fields.size() >= 1);
    CHECK(cu.default_filled_fields.front() == "v_eff");
}

TEST_CASE("builtin TeO2 record") {
    const Material t = builtin_material("TeO2");
    CHECK(t.density == doctest::Approx(6.0e3)); // 750 g / (5 cm)^3
    CHECK(t.cell_masses.size() == 12);          // 4 Te + 8 O
    CHECK(t.k0 == doctest::Approx(3.0));
    // cell volume consistent with density and cell mass
    CHECK(t.primitive_cell_volume == doctest::Approx(t.cell_mass() / t.density).epsilon(1e-14));
}

TEST_CASE("unknown material is a not-found error") {
    CHECK_THROWS_AS(builtin_material("Unobtainium"), not_found_error);
}

TEST_CASE("debye frequency fixture") {
    Material m = builtin_material("Cu");
    m.v_eff = 5000.0;
    // v_eff = 5000 m/s, V0 = (3.61478 A)^3/4; frozen from a direct evaluation
    CHECK(debye_frequency(m) == doctest::Approx(8.5583845386998140e13).epsilon(1e-12));
}

TEST_CASE("debye frequency scaling") {
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int i = 0; i < 100; ++i) {
        Material m = builtin_material("Cu");
        m.v_eff = 3000.0 * u(eng);
        m.primitive_cell_volume = 1e-29 * u(eng);
        const double w0 = debye_frequency(m);

        Material m2 = m;
        m2.v_eff *= 2.0; // linear in v_eff
        CHECK(debye_frequency(m2) == doctest::Approx(2.0 * w0).epsilon(1e-12));

        Material m3 = m;
        m3.primitive_cell_volume *= 8.0; // cube-root scaling halves omega_D
        CHECK(debye_frequency(m3) == doctest::Approx(0.5 * w0).epsilon(1e-12));

        Material m4 = m;
        const double s = u(eng);
        m4.v_eff *= s;
        m4.primitive_cell_volume *= s;
        CHECK(debye_frequency(m4) ==
              doctest::Approx(w0 * s * std::pow(s, -1.0 / 3.0)).epsilon(1e-12));
    }
}

TEST_CASE("overrides clear the default flag") {
    Material m = builtin_material("Cu");
    MaterialOverrides ov;
    ov.v_eff = 5100.0;
    m = apply_overrides(m, ov);
    CHECK(m.v_eff == doctest::Approx(5100.0));
    CHECK(m.default_filled_fields.empty());
}

TEST_CASE("invalid fields rejected") {
    Material m = builtin_material("Cu");
    m.density = -1.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = builtin_material("Cu");
    m.cell_masses = {0.0};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("material db round trip") {
    std::istringstream db(R"(# test db
[Fake]
density = 5e3
lattice_param = 4A
v_eff = 2500
k0 = 12
cell_masses_amu = 50 16 16
)");
    const auto mats = load_material_db(db);
    REQUIRE(mats.count("Fake") == 1);
    const Material& f = mats.at("Fake");
    CHECK(f.lattice_param == doctest::Approx(4e-10));
    CHECK(f.cell_masses.size() == 3);
    CHECK(f.primitive_cell_volume == doctest::Approx(f.cell_mass() / 5e3));
}

TEST_CASE("material db rejects unknown keys") {
    std::istringstream db(R"([Fake]
density = 5e3
lattice_param = 4A
v_eff = 2500
k0 = 12
cell_masses_amu = 50
densty = 1 # typo
)");
    CHECK_THROWS_AS(load_material_db(db), usage_error);
}

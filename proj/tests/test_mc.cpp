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

#include "cslheat/constants.hpp"
#include "cslheat/heating.hpp"
#include "cslheat/material.hpp"
#include "cslheat/mc.hpp"

using namespace cslheat;

namespace {

const CslParams ref_params{1e-8, 1e-7};

Material toy_material() {
    Material m = builtin_material("Cu");
    m.lattice_param = 2.0 * ref_params.r_c; // probe window must cover finite-k modes
    m.v_eff = 5000.0;
    return m;
}

McConfig small_config() {
    McConfig cfg;
    cfg.grid = build_grid(2, toy_material());
    cfg.probe_extent = 4.0 / ref_params.r_c;
    cfg.probe_points_per_axis = 5;
    double w_max = 0.0;
    for (const auto& m : cfg.grid.modes) w_max = std::max(w_max, m.omega);
    cfg.dt = 0.05 / w_max;
    cfg.steps = 40;
    cfg.trajectories = 300;
    cfg.checkpoints = 8;
    cfg.seed = 2024;
    return cfg;
}

} // namespace

TEST_CASE("discrete oracle equals its algebraic reduction") {
    // the mode sums collapse exactly: completeness gives |q|^2 per k-point
    // and the site sums obey sum_k |Phi(q + k)|^2 = N^2, so
    //   slope = hbar^2 gamma M /(2 m0^2 N) sum_q w e^{-rc^2 q^2} q^2 (N^2 - |Phi(q)|^2)
    const auto grid = build_grid(2, toy_material());
    const auto probes = NoiseGrid::cubic(4.0 / ref_params.r_c, 5);
    const double brute = discrete_oracle_slope(grid, probes, ref_params);

    const double gamma = gamma_total(ref_params);
    const double n = grid.n_sites();
    const double mass = grid.atom_mass;
    double reduced = 0.0;
    for (std::size_t qi = 0; qi < probes.size(); ++qi) {
        const auto& q = probes.points[qi];
        const double phi2 = std::norm(lattice_structure_sum(grid, q));
        reduced += probes.cell_weight() * std::exp(-ref_params.r_c * ref_params.r_c * q.squaredNorm()) *
                   q.squaredNorm() * (n * n - phi2);
    }
    reduced *= constants.hbar * constants.hbar * gamma * mass /
               (2.0 * constants.m0 * constants.m0 * n);
    CHECK(brute == doctest::Approx(reduced).epsilon(1e-12));
}

TEST_CASE("oracle refinement approaches the continuum white rate") {
    const auto grid = build_grid(4, toy_material());
    const double total_mass = grid.atom_mass * grid.n_sites();
    const double continuum = energy_growth_white(ref_params, total_mass, 1.0);
    const auto oracles =
        oracle_refinement(grid, 4.0 / ref_params.r_c, {5, 9, 17}, ref_params);
    double prev_gap = 1e99;
    for (double o : oracles) {
        const double gap = std::abs(o - continuum) / continuum;
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    // the remaining gap is the excluded k = 0 translation weight, order 1/N
    CHECK(prev_gap < 3.0 / grid.n_sites());
}

TEST_CASE("config guards") {
    McConfig cfg = small_config();
    cfg.dt *= 100.0; // violates dt * max omega < 0.1
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.trajectories = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.probe_points_per_axis = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("mc slope agrees with the discrete oracle within 3 standard errors") {
    const McConfig cfg = small_config();
    const McResult res = mc_energy_growth(cfg, ref_params);
    CHECK(res.slope_se > 0.0);
    CHECK(std::abs(res.slope - res.discrete_oracle) <= 3.0 * res.slope_se);
    CHECK(res.linear_model_ok);
    CHECK(res.mean_energy.size() == static_cast<std::size_t>(cfg.checkpoints));
    // energies grow with time on average
    CHECK(res.mean_energy.back() > res.mean_energy.front());
}

TEST_CASE("mc is deterministic in the seed") {
    const McConfig cfg = small_config();
    const McResult a = mc_energy_growth(cfg, ref_params);
    const McResult b = mc_energy_growth(cfg, ref_params);
    CHECK(a.slope == b.slope);
    CHECK(a.mean_energy == b.mean_energy);
    McConfig cfg2 = cfg;
    cfg2.seed += 1;
    const McResult c = mc_energy_growth(cfg2, ref_params);
    CHECK(a.slope != c.slope);
}

TEST_CASE("lambda = 0 gives exactly zero slope") {
    McConfig cfg = small_config();
    cfg.trajectories = 2;
    const McResult res = mc_energy_growth(cfg, CslParams{0.0, ref_params.r_c});
    CHECK(res.slope == 0.0);
    CHECK(res.slope_se == 0.0);
    for (double e : res.mean_energy) CHECK(e == 0.0);
}

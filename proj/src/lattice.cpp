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

#include "cslheat/lattice.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <stdexcept>

#include "cslheat/constants.hpp"
#include "cslheat/material.hpp"

namespace cslheat {

namespace {

// integer index folded into (-L/2, L/2]
int fold(int m, int L) { return m > L / 2 ? m - L : m; }

Eigen::Matrix3d polarization_triad(const Eigen::Vector3d& k_rep) {
    Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
    const double n = k_rep.norm();
    if (n == 0.0) return t;
    const Eigen::Vector3d la = k_rep / n;
    // Gram-Schmidt against a fixed reference; fall back when k || z
    Eigen::Vector3d ref(0.0, 0.0, 1.0);
    if (std::abs(la.dot(ref)) > 0.9) ref = Eigen::Vector3d(1.0, 0.0, 0.0);
    Eigen::Vector3d ta1 = ref - ref.dot(la) * la;
    ta1.normalize();
    const Eigen::Vector3d ta2 = la.cross(ta1);
    t.col(0) = la;
    t.col(1) = ta1;
    t.col(2) = ta2;
    return t;
}

} // namespace

ModeGrid build_grid(int cells_per_edge, const Material& mat) {
    if (cells_per_edge < 2) throw std::invalid_argument("mode grid needs L >= 2 cells per edge");
    mat.validate();

    ModeGrid g;
    g.cells_per_edge = cells_per_edge;
    g.lattice_param = mat.lattice_param;
    g.v_eff = mat.v_eff;
    g.atom_mass = mat.cell_masses.front();

    const int L = cells_per_edge;
    const double a = g.lattice_param;

    g.sites.reserve(static_cast<std::size_t>(L) * L * L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            for (int l = 0; l < L; ++l)
                g.sites.emplace_back(a * i, a * j, a * l);

    const double dk = 2.0 * M_PI / (L * a);
    auto flat = [L](int m1, int m2, int m3) { return (m1 * L + m2) * L + m3; };

    std::vector<KPoint> pts(static_cast<std::size_t>(L) * L * L);
    for (int m1 = 0; m1 < L; ++m1)
        for (int m2 = 0; m2 < L; ++m2)
            for (int m3 = 0; m3 < L; ++m3) {
                const int f1 = fold(m1, L), f2 = fold(m2, L), f3 = fold(m3, L);
                KPoint& p = pts[static_cast<std::size_t>(flat(m1, m2, m3))];
                p.k = dk * Eigen::Vector3d(f1, f2, f3);
                p.mirror = flat((L - m1) % L, (L - m2) % L, (L - m3) % L);
            }
    // one triad per +-k pair, built from the lower-index representative:
    // eps(-k) = eps(k) holds bit-exactly, also across the zone boundary
    // where the partner is -k only modulo a reciprocal lattice vector
    for (int i = 0; i < L * L * L; ++i) {
        KPoint& p = pts[static_cast<std::size_t>(i)];
        if (p.mirror < i)
            p.triad = pts[static_cast<std::size_t>(p.mirror)].triad;
        else
            p.triad = polarization_triad(p.k);
    }

    g.kpoints = std::move(pts); // flat(0,0,0) = 0, so k = 0 leads the list

    for (std::size_t ki = 1; ki < g.kpoints.size(); ++ki) {
        const KPoint& p = g.kpoints[ki];
        const double omega = g.v_eff * p.k.norm();
        for (int s = 0; s < 3; ++s) {
            PhononMode m;
            m.kpoint = static_cast<int>(ki);
            m.branch = s;
            m.omega = omega;
            m.k = p.k;
            m.polarization = p.triad.col(s);
            g.modes.push_back(m);
        }
    }
    return g;
}

std::complex<double> eta(const ModeGrid& grid, const PhononMode& mode, int site,
                         const Eigen::Vector3d& probe_k) {
    if (site < 0 || site >= grid.n_sites()) throw std::invalid_argument("site index out of range");
    if (!(mode.omega > 0.0)) throw std::invalid_argument("eta needs a finite-frequency mode");
    const double n_cells = grid.n_sites();
    const double amp = std::sqrt(constants.hbar / (2.0 * n_cells * grid.atom_mass * mode.omega));
    const double projection = probe_k.dot(mode.polarization); // eps real: eps* = eps
    const double phase = -mode.k.dot(grid.sites[static_cast<std::size_t>(site)]);
    return std::complex<double>(0.0, -1.0) * amp * projection *
           std::exp(std::complex<double>(0.0, phase));
}

std::complex<double> lattice_structure_sum(const ModeGrid& grid, const Eigen::Vector3d& q) {
    const int L = grid.cells_per_edge;
    const double a = grid.lattice_param;
    std::complex<double> out(1.0, 0.0);
    for (int d = 0; d < 3; ++d) {
        std::complex<double> s(0.0, 0.0);
        for (int n = 0; n < L; ++n)
            s += std::exp(std::complex<double>(0.0, -q[d] * a * n));
        out *= s;
    }
    return out;
}

std::complex<double> site_sum_eta(const ModeGrid& grid, const PhononMode& mode,
                                  const Eigen::Vector3d& probe_k) {
    if (!(mode.omega > 0.0)) throw std::invalid_argument("eta needs a finite-frequency mode");
    const double n_cells = grid.n_sites();
    const double amp = std::sqrt(constants.hbar / (2.0 * n_cells * grid.atom_mass * mode.omega));
    const double projection = probe_k.dot(mode.polarization);
    return std::complex<double>(0.0, -1.0) * amp * projection *
           lattice_structure_sum(grid, probe_k + mode.k);
}

} // namespace cslheat

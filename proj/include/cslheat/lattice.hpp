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

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace cslheat {

struct Material;

/// One reciprocal-space point of the mode grid.
struct KPoint {
    Eigen::Vector3d k;     // folded into the first Brillouin zone, 1/m
    Eigen::Matrix3d triad; // columns: LA (k-hat of the canonical pair rep.), TA1, TA2
    int mirror = 0;        // index of the point at -k (mod reciprocal lattice)
};

/// One phonon normal mode (k, s). branch 0 = LA, 1..2 = TA.
struct PhononMode {
    int kpoint = 0;
    int branch = 0;
    double omega = 0.0;            // rad/s, Debye dispersion v_eff |k|
    Eigen::Vector3d k;
    Eigen::Vector3d polarization;  // real unit vector
};

/// Mode set of a mono-atomic simple-cubic crystal under the isotropic
/// Debye model: L^3 sites, 3 L^3 modes, the three k = 0 translations
/// excluded from the dynamical list (they carry no finite frequency).
///
/// Each +-k pair (paired modulo the reciprocal lattice) shares one real
/// triad built from the pair representative, so the conjugation
/// convention eps*(k) = eps(-k) holds bit-exactly. LA is along the
/// representative's k-hat; for zone-boundary pairs the partner is -k
/// only modulo a reciprocal vector, so its LA column follows the
/// representative rather than its own folded direction.
struct ModeGrid {
    int cells_per_edge = 0;
    double lattice_param = 0.0; // m
    double v_eff = 0.0;         // m/s
    double atom_mass = 0.0;     // kg

    std::vector<Eigen::Vector3d> sites; // R_i, site-major x,y,z order
    std::vector<KPoint> kpoints;        // all L^3 points, k = 0 first
    std::vector<PhononMode> modes;      // dynamical modes only

    int n_sites() const { return cells_per_edge * cells_per_edge * cells_per_edge; }
    int total_mode_count() const { return 3 * n_sites(); }
    int excluded_mode_count() const { return total_mode_count() - static_cast<int>(modes.size()); }
};

/// L >= 2 cells per edge; mass, lattice parameter and sound velocity
/// taken from the material (first cell mass for the mono-atomic model).
ModeGrid build_grid(int cells_per_edge, const Material& mat);

/// Coupling coefficient
///   eta_{i,ks}(q) = -i sqrt(hbar / (2 N M omega_ks))
///                   (sum_a q_a eps*_a(k)) e^{-i k . R_i}
/// for probe wavevector q. Dimensionless.
std::complex<double> eta(const ModeGrid& grid, const PhononMode& mode, int site,
                         const Eigen::Vector3d& probe_k);

/// sum_i e^{-i q . R_i} eta_{i,ks}(q); the site sum factorizes over the
/// three cubic axes into per-axis geometric sums.
std::complex<double> site_sum_eta(const ModeGrid& grid, const PhononMode& mode,
                                  const Eigen::Vector3d& probe_k);

/// sum_i e^{-i q . R_i} over the L^3 sites (axis-factorized).
std::complex<double> lattice_structure_sum(const ModeGrid& grid, const Eigen::Vector3d& q);

} // namespace cslheat

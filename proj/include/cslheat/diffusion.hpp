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

#include <utility>
#include <vector>

namespace cslheat {

enum class GeometryKind { Sphere, Cylinder, Slab };

struct Geometry {
    GeometryKind kind = GeometryKind::Sphere;
    double length = 0.0; // sphere/cylinder radius or slab half-width [m]

    static Geometry sphere(double r0);
    static Geometry cylinder(double r0);
    static Geometry slab(double half_width);
    void validate() const;
};

/// Linearized center/surface difference is shape_factor * q_dot/(k0 Ts):
/// 1/6 sphere, 1/4 cylinder, 1/2 slab (classical constant-k factors,
/// applied at k = k0 Ts).
double shape_factor(GeometryKind kind);

struct ProfileSample {
    double r;            // m
    double t_exact;      // K
    double t_linearized; // K
};

/// Steady-state profile under uniform heating with k = k0*T.
///
/// The profile is a function of the scaled coordinate x = r/length:
///   T(x)^2 = Ts^2 + 2 sf (q/k0) (1 - x^2),
///   T_lin(x) = Ts + sf (q/(k0 Ts)) (1 - x^2),
/// with sf the shape factor. The load term q/(k0 Ts^2) enters with its
/// SI magnitude; the geometry length only sets the r axis of the
/// samples, so the center/surface difference is size-independent in
/// this convention.
struct TemperatureProfile {
    Geometry geometry;
    double t_surface = 0.0;
    double q_dot = 0.0;
    double k0 = 0.0;
    std::vector<ProfileSample> samples;
    double core_delta_exact = 0.0;      // T(0) - Ts
    double core_delta_linearized = 0.0;
};

TemperatureProfile profile(double t_surface, double q_dot, double k0,
                           const Geometry& geometry, int n_samples);
TemperatureProfile profile_sphere(double t_surface, double q_dot, double k0,
                                  double r0, int n_samples);

/// (exact, linearized) center/surface temperature differences.
/// The linearized values are computed as shape-factor multiples of a
/// single base quantity, so cross-geometry ratios are exact.
std::pair<double, double> core_temperature_delta(double t_surface, double q_dot, double k0,
                                                 const Geometry& geometry);

/// Independent finite-difference solution of
///   (k0 / x^p) d/dx (x^p T dT/dx) + q = 0,  T(1) = Ts,  T'(0) = 0,
/// p = 2 / 1 / 0 for sphere / cylinder / slab, via a conservative
/// second-order control-volume scheme (geometric-mean face conductivity)
/// and damped Newton iteration on T. mesh >= 64 cells. Converged when
/// the scaled per-cell flux-imbalance defect h^2 max|F| drops below
/// 1e-12 in T/Ts units.
TemperatureProfile solve_bvp_oracle(double t_surface, double q_dot, double k0,
                                    const Geometry& geometry, int mesh);

} // namespace cslheat

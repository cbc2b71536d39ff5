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

#include <string>

namespace cslheat {

struct CslParams;
struct Material;
class NoiseSpectrum;

enum class RateMethod { WhiteAnalytic, NonWhiteQuadrature, McEstimate };
std::string to_string(RateMethod m);

struct HeatingRate {
    double q_dot = 0.0;          // W/m^3
    double power_per_mass = 0.0; // W/kg; q_dot = power_per_mass * density
    RateMethod method = RateMethod::WhiteAnalytic;
    double error_estimate = 0.0; // W/m^3: quadrature bound or MC standard error
};

/// White-noise volumetric heating rate
///   q = 3 hbar^2 lambda rho / (4 m0^2 r_c^2).
HeatingRate rate_white(const CslParams& p, const Material& mat);

struct NonWhiteOptions {
    double rel_tol = 1e-8;          // in (0, 1e-3]
    bool truncate_at_debye = false; // integrate to omega_D instead of infinity
};

/// Non-white rate in the long-wave Debye limit:
///   q = hbar^2 rho / (4 pi^2 m0^2 v_eff^5)
///       * \int_0^inf w^4 exp(-w^2 r_c^2 / v_eff^2) gamma(w) dw,
/// evaluated by adaptive quadrature with mandatory splits at spectrum
/// discontinuities and envelope truncation. The Debye upper limit is
/// extended to infinity by default (the Gaussian envelope cuts off at
/// v_eff/r_c, far below omega_D for physical inputs); the strict option
/// integrates to omega_D instead.
HeatingRate rate_nonwhite(const NoiseSpectrum& spectrum, const Material& mat, double rel_tol);
HeatingRate rate_nonwhite(const NoiseSpectrum& spectrum, const Material& mat,
                          const NonWhiteOptions& opt);

/// Mean energy gained by a crystal of the given total mass after time t:
///   dE = t * 3 hbar^2 lambda M / (4 m0^2 r_c^2)   [J]
double energy_growth_white(const CslParams& p, double total_mass, double t);

} // namespace cslheat

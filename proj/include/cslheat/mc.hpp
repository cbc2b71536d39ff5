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
#include <vector>

#include "cslheat/lattice.hpp"
#include "cslheat/noise.hpp"

namespace cslheat {

struct CslParams;

struct McConfig {
    ModeGrid grid;
    double probe_extent = 0.0;     // max |k_d| of the probe grid [1/m]
    int probe_points_per_axis = 5; // odd
    double dt = 0.0;               // s
    int steps = 0;
    int trajectories = 0;
    std::uint64_t seed = 0;
    int checkpoints = 10; // sampled times for the slope fit

    /// dt * max omega < 0.1 resolution guard, trajectories >= 2, probe
    /// grid inversion-symmetric by construction.
    void validate() const;
};

struct McResult {
    double slope = 0.0;           // W, fitted d<E>/dt
    double slope_se = 0.0;        // W, standard error of the fit
    double discrete_oracle = 0.0; // W, same grid sums with E|int e^{iwt}dW|^2 = gamma t
    double chi2 = 0.0;            // linearity statistic of the mean curve
    double chi2_threshold_95 = 0.0;
    bool linear_model_ok = true;  // false flags a trend beyond the 95% line

    std::vector<double> times;
    std::vector<double> mean_energy;   // <dE>(t) [J]
    std::vector<double> stderr_energy; // per checkpoint [J]
};

/// Simulates the linearized mode solutions under synthesized white
/// noise: per mode b <- b + i e^{i w t_n} sum_q C(q) dW_n(q), with the
/// coefficients C built from the same eta site sums and the same noise
/// discretization as the oracle. Vacuum initial state, normal-ordered
/// energy sum_ks hbar w |b_ks|^2.
McResult mc_energy_growth(const McConfig& cfg, const CslParams& params);

/// Deterministic slope from the same mode/probe double sum:
///   sum_ks hbar w_ks sum_q |C_ks(q)|^2 gamma / cell_weight.
double discrete_oracle_slope(const ModeGrid& grid, const NoiseGrid& probes,
                             const CslParams& params);

/// Oracle at several probe refinements (points per axis), same extent.
std::vector<double> oracle_refinement(const ModeGrid& grid, double probe_extent,
                                      const std::vector<int>& points_per_axis,
                                      const CslParams& params);

} // namespace cslheat

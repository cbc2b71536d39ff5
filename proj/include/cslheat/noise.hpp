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
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cslheat {

/// Collapse-rate parameters of the noise field.
struct CslParams {
    double lambda = 0.0; // 1/s
    double r_c = 0.0;    // m
    void validate() const;
};

/// Total white-noise strength gamma = 8 pi^(3/2) lambda r_c^3  [m^3/s].
double gamma_total(const CslParams& p);

enum class SpectrumKind { Flat, StepCutoff, Tabulated };

/// Noise spectral density gamma(omega). The spectrum is even in omega
/// and evaluated for omega >= 0; the time correlation is
///   f(t) = (1/pi) \int_0^inf gamma(w) cos(w t) dw.
class NoiseSpectrum {
public:
    static NoiseSpectrum flat(CslParams p);
    static NoiseSpectrum step_cutoff(CslParams p, double omega_cut);
    /// knots: (omega_i, gamma_i) with strictly increasing omega_i >= 0 and
    /// gamma_i >= 0; piecewise-linear between knots, zero beyond the last.
    static NoiseSpectrum tabulated(CslParams p, std::vector<std::array<double, 2>> knots);

    SpectrumKind kind() const { return kind_; }
    const CslParams& params() const { return params_; }
    double cutoff() const; // StepCutoff only
    const std::vector<std::array<double, 2>>& knots() const;

    /// gamma(omega). omega < 0 throws std::domain_error.
    double value(double omega) const;

    /// f(t). Flat spectra are rejected with unsupported_error: white
    /// noise must go through the analytic code paths instead of a delta
    /// surrogate.
    double correlation(double t) const;

    /// Upper end of the spectral support: cutoff for StepCutoff, last
    /// knot for Tabulated, +inf for Flat.
    double support_end() const;

private:
    NoiseSpectrum(SpectrumKind kind, CslParams p) : kind_(kind), params_(p) {}
    SpectrumKind kind_;
    CslParams params_;
    double omega_cut_ = 0.0;
    std::vector<std::array<double, 2>> knots_;
};

/// Two-column text file: omega [rad/s], gamma(omega).
NoiseSpectrum load_tabulated_spectrum(const std::string& path, CslParams p);

/// Inversion-symmetric cubic grid of noise wavevectors k-tilde.
/// The continuum delta^3(k + k') is discretized as a Kronecker delta
/// divided by the cell weight dk^3/(2 pi)^3; the sampler and the MC
/// oracle both use exactly this convention.
struct NoiseGrid {
    std::vector<Eigen::Vector3d> points; // 1/m
    double dk = 0.0;                     // spacing per axis
    std::vector<int> mirror;             // index of -k for each point

    std::size_t size() const { return points.size(); }
    double cell_weight() const; // dk^3/(2 pi)^3
    void validate() const;      // throws std::invalid_argument if any point lacks its mirror

    /// Odd points_per_axis, centered on the origin; extent = max |k_d|.
    static NoiseGrid cubic(double extent, int points_per_axis);
};

/// One realization of the discretized noise field: complex Wiener
/// increments dW(t_n, k), stored step-major. Per increment,
/// E|dW|^2 = gamma * dt / cell_weight, and the increment at -k is the
/// complex conjugate of the increment at +k in every sample.
struct NoisePath {
    double dt = 0.0;
    int steps = 0;
    std::size_t n_points = 0;
    std::vector<std::complex<double>> increments;

    std::complex<double> at(int step, std::size_t point) const {
        return increments[static_cast<std::size_t>(step) * n_points + point];
    }
};

/// Deterministic in (seed); independent across time steps; conjugation
/// pairing enforced by sampling one half-space and mirroring.
NoisePath synthesize_white_path(const CslParams& p, const NoiseGrid& grid,
                                double dt, int steps, std::uint64_t seed);

} // namespace cslheat

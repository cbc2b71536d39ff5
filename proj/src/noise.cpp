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

#include "cslheat/noise.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cslheat/config.hpp"
#include "cslheat/errors.hpp"
#include "cslheat/quadrature.hpp"
#include "cslheat/rng.hpp"

namespace cslheat {

void CslParams::validate() const {
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    if (!(r_c > 0.0)) throw std::invalid_argument("r_c must be > 0");
}

double gamma_total(const CslParams& p) {
    p.validate();
    return 8.0 * std::pow(M_PI, 1.5) * p.lambda * p.r_c * p.r_c * p.r_c;
}

NoiseSpectrum NoiseSpectrum::flat(CslParams p) {
    p.validate();
    return NoiseSpectrum(SpectrumKind::Flat, p);
}

NoiseSpectrum NoiseSpectrum::step_cutoff(CslParams p, double omega_cut) {
    p.validate();
    if (!(omega_cut > 0.0)) throw std::invalid_argument("step cutoff must be > 0");
    NoiseSpectrum s(SpectrumKind::StepCutoff, p);
    s.omega_cut_ = omega_cut;
    return s;
}

NoiseSpectrum NoiseSpectrum::tabulated(CslParams p, std::vector<std::array<double, 2>> knots) {
    p.validate();
    if (knots.size() < 2) throw std::invalid_argument("tabulated spectrum needs >= 2 knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i][0] >= 0.0)) throw std::invalid_argument("tabulated omega must be >= 0");
        if (!(knots[i][1] >= 0.0)) throw std::invalid_argument("tabulated gamma must be >= 0");
        if (i > 0 && !(knots[i][0] > knots[i - 1][0]))
            throw std::invalid_argument("tabulated omega values must be strictly increasing");
    }
    NoiseSpectrum s(SpectrumKind::Tabulated, p);
    s.knots_ = std::move(knots);
    return s;
}

double NoiseSpectrum::cutoff() const {
    if (kind_ != SpectrumKind::StepCutoff)
        throw unsupported_error("cutoff() is defined for StepCutoff spectra only");
    return omega_cut_;
}

const std::vector<std::array<double, 2>>& NoiseSpectrum::knots() const {
    if (kind_ != SpectrumKind::Tabulated)
        throw unsupported_error("knots() is defined for Tabulated spectra only");
    return knots_;
}

double NoiseSpectrum::support_end() const {
    switch (kind_) {
    case SpectrumKind::Flat: return std::numeric_limits<double>::infinity();
    case SpectrumKind::StepCutoff: return omega_cut_;
    case SpectrumKind::Tabulated: return knots_.back()[0];
    }
    return 0.0;
}

double NoiseSpectrum::value(double omega) const {
    if (omega < 0.0) throw std::domain_error("spectrum evaluated at omega < 0");
    switch (kind_) {
    case SpectrumKind::Flat:
        return gamma_total(params_);
    case SpectrumKind::StepCutoff:
        return omega <= omega_cut_ ? gamma_total(params_) : 0.0;
    case SpectrumKind::Tabulated: {
        if (omega < knots_.front()[0] || omega > knots_.back()[0]) return 0.0;
        // knots are few; linear scan is fine
        for (std::size_t i = 1; i < knots_.size(); ++i) {
            if (omega <= knots_[i][0]) {
                const double w0 = knots_[i - 1][0], w1 = knots_[i][0];
                const double g0 = knots_[i - 1][1], g1 = knots_[i][1];
                return g0 + (g1 - g0) * (omega - w0) / (w1 - w0);
            }
        }
        return knots_.back()[1];
    }
    }
    return 0.0;
}

double NoiseSpectrum::correlation(double t) const {
    if (!std::isfinite(t)) throw std::domain_error("correlation requires finite t");
    switch (kind_) {
    case SpectrumKind::Flat:
        throw unsupported_error(
            "correlation of a flat spectrum is a delta; use the analytic white-noise paths");
    case SpectrumKind::StepCutoff: {
        const double g = gamma_total(params_);
        const double x = omega_cut_ * t;
        if (std::abs(x) < 1e-8) // sin(x)/x -> 1 - x^2/6
            return g * omega_cut_ / M_PI * (1.0 - x * x / 6.0);
        return g * std::sin(x) / (M_PI * t);
    }
    case SpectrumKind::Tabulated: {
        const double w_end = knots_.back()[0];
        std::vector<double> breaks;
        for (const auto& kn : knots_) breaks.push_back(kn[0]);
        // resolve the cosine: add split points every ~half period
        if (std::abs(t) * w_end > M_PI) {
            const double step = M_PI / std::abs(t);
            for (double w = step; w < w_end; w += step) breaks.push_back(w);
        }
        auto integrand = [this, t](double w) { return value(w) * std::cos(w * t); };
        const auto q = integrate_adaptive(integrand, 0.0, w_end, 1e-10, 0.0, breaks);
        if (!q.converged)
            throw numeric_error("tabulated correlation quadrature did not converge",
                                q.value / M_PI);
        return q.value / M_PI;
    }
    }
    return 0.0;
}

NoiseSpectrum load_tabulated_spectrum(const std::string& path, CslParams p) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open spectrum file '" + path + "'");
    std::vector<std::array<double, 2>> knots;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw usage_error("spectrum file line " + std::to_string(lineno) +
                              ": expected two columns (omega gamma)");
        knots.push_back({parse_double(toks[0], "spectrum omega"),
                         parse_double(toks[1], "spectrum gamma")});
    }
    return NoiseSpectrum::tabulated(p, std::move(knots));
}

double NoiseGrid::cell_weight() const {
    const double c = dk / (2.0 * M_PI);
    return c * c * c;
}

void NoiseGrid::validate() const {
    if (points.empty() || mirror.size() != points.size())
        throw std::invalid_argument("noise grid: empty or inconsistent mirror table");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const int j = mirror[i];
        if (j < 0 || static_cast<std::size_t>(j) >= points.size())
            throw std::invalid_argument("noise grid: mirror index out of range");
        if ((points[i] + points[static_cast<std::size_t>(j)]).norm() > 1e-9 * (dk > 0 ? dk : 1.0))
            throw std::invalid_argument("noise grid: point lacks an inversion partner");
    }
}

NoiseGrid NoiseGrid::cubic(double extent, int points_per_axis) {
    if (!(extent > 0.0)) throw std::invalid_argument("noise grid extent must be > 0");
    if (points_per_axis < 3 || points_per_axis % 2 == 0)
        throw std::invalid_argument("points_per_axis must be odd and >= 3");
    NoiseGrid g;
    const int n = points_per_axis;
    const int h = n / 2;
    g.dk = extent / h;
    g.points.reserve(static_cast<std::size_t>(n) * n * n);
    for (int i = -h; i <= h; ++i)
        for (int j = -h; j <= h; ++j)
            for (int l = -h; l <= h; ++l)
                g.points.emplace_back(i * g.dk, j * g.dk, l * g.dk);
    auto flat = [n, h](int i, int j, int l) {
        return ((i + h) * n + (j + h)) * n + (l + h);
    };
    g.mirror.resize(g.points.size());
    for (int i = -h; i <= h; ++i)
        for (int j = -h; j <= h; ++j)
            for (int l = -h; l <= h; ++l)
                g.mirror[static_cast<std::size_t>(flat(i, j, l))] = flat(-i, -j, -l);
    g.validate();
    return g;
}

NoisePath synthesize_white_path(const CslParams& p, const NoiseGrid& grid,
                                double dt, int steps, std::uint64_t seed) {
    p.validate();
    grid.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");

    const double variance = gamma_total(p) * dt / grid.cell_weight(); // E|dW|^2, [m^6]
    const double sigma_half = std::sqrt(0.5 * variance);
    const double sigma_full = std::sqrt(variance);

    NoisePath path;
    path.dt = dt;
    path.steps = steps;
    path.n_points = grid.size();
    path.increments.assign(static_cast<std::size_t>(steps) * grid.size(), {});

    auto eng = derived_engine(seed, 0);
    std::normal_distribution<double> n01(0.0, 1.0);

    for (int n = 0; n < steps; ++n) {
        const std::size_t base = static_cast<std::size_t>(n) * grid.size();
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const std::size_t m = static_cast<std::size_t>(grid.mirror[j]);
            if (m == j) {
                // self-conjugate point (the origin): real increment
                path.increments[base + j] = {sigma_full * n01(eng), 0.0};
            } else if (j < m) {
                const std::complex<double> z{sigma_half * n01(eng), sigma_half * n01(eng)};
                path.increments[base + j] = z;
                path.increments[base + m] = std::conj(z);
            }
        }
    }
    return path;
}

} // namespace cslheat

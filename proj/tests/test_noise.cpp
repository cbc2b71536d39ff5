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
#include <complex>
#include <random>

#include "cslheat/errors.hpp"
#include "cslheat/noise.hpp"
#include "cslheat/quadrature.hpp"

using namespace cslheat;

namespace {
const CslParams ref_params{1e-8, 1e-7};
}

TEST_CASE("gamma_total identity and scaling") {
    // frozen direct evaluation of 8 pi^(3/2) * 1e-8 * 1e-21
    CHECK(gamma_total(ref_params) == doctest::Approx(4.4546623974653660e-28).epsilon(1e-12));

    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const CslParams p{1e-9 * u(eng), 1e-8 * u(eng)};
        const double g = gamma_total(p);
        const double s = u(eng);
        CHECK(gamma_total({p.lambda * s, p.r_c}) == doctest::Approx(g * s).epsilon(1e-12));
        CHECK(gamma_total({p.lambda, p.r_c * s}) == doctest::Approx(g * s * s * s).epsilon(1e-12));
    }
}

TEST_CASE("spectrum values per kind") {
    const double g = gamma_total(ref_params);

    const auto flat = NoiseSpectrum::flat(ref_params);
    CHECK(flat.value(0.0) == doctest::Approx(g));
    CHECK(flat.value(1e9) == doctest::Approx(g));
    CHECK(flat.value(1e15) == doctest::Approx(g));

    const auto step = NoiseSpectrum::step_cutoff(ref_params, 1e9);
    CHECK(step.value(0.5e9) == doctest::Approx(g));
    CHECK(step.value(2e9) == 0.0);

    const auto tab = NoiseSpectrum::tabulated(ref_params, {{0.0, g}, {1e9, g}});
    CHECK(tab.value(5e8) == doctest::Approx(g)); // flat segment
    CHECK(tab.value(2e9) == 0.0);                // zero beyond last knot

    CHECK_THROWS_AS(flat.value(-1.0), std::domain_error);
}

TEST_CASE("step spectrum is non-increasing, flat constant") {
    const auto step = NoiseSpectrum::step_cutoff(ref_params, 3e8);
    const auto flat = NoiseSpectrum::flat(ref_params);
    std::mt19937_64 eng(13);
    std::uniform_real_distribution<double> u(0.0, 1e9);
    double prev_w = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double w1 = u(eng), w2 = u(eng);
        CHECK(flat.value(w1) == flat.value(w2));
        const double lo = std::min(w1, w2), hi = std::max(w1, w2);
        CHECK(step.value(hi) <= step.value(lo));
        prev_w = w1;
    }
    (void)prev_w;
}

TEST_CASE("correlation of the step spectrum") {
    const double omega = 2e9;
    const auto step = NoiseSpectrum::step_cutoff(ref_params, omega);
    const double g = gamma_total(ref_params);
    // t -> 0 limit g*Omega/pi
    CHECK(step.correlation(0.0) == doctest::Approx(g * omega / M_PI).epsilon(1e-12));
    // zero of the sine at t = pi/Omega
    CHECK(step.correlation(M_PI / omega) ==
          doctest::Approx(0.0).scale(g * omega / M_PI).epsilon(1e-12));
    CHECK(step.correlation(1e-9) ==
          doctest::Approx(g * std::sin(omega * 1e-9) / (M_PI * 1e-9)).epsilon(1e-12));
}

TEST_CASE("correlation rejects flat spectra") {
    const auto flat = NoiseSpectrum::flat(ref_params);
    CHECK_THROWS_AS(flat.correlation(1e-9), unsupported_error);
}

TEST_CASE("tabulated correlation against a closed form") {
    // gamma(w) = g0 (1 - w/W) on [0, W]: f(t) = (g0/pi) [sin(Wt)/t ...]
    // use the independent closed form of int_0^W (1 - w/W) cos(w t) dw
    //   = sin(Wt)/t - (cos(0) ... ) ; evaluate both by high-order quadrature
    const double g0 = 1e-28, W = 1e9;
    const auto tab = NoiseSpectrum::tabulated(ref_params, {{0.0, g0}, {W, 0.0}});
    for (double t : {0.0, 1e-10, 7e-10, 3e-9}) {
        const double direct = tab.correlation(t);
        const double expected =
            t == 0.0 ? g0 * W / (2.0 * M_PI)
                     : (g0 / M_PI) * (1.0 - std::cos(W * t)) / (W * t * t);
        CHECK(direct == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("tabulated knots validated") {
    CHECK_THROWS_AS(NoiseSpectrum::tabulated(ref_params, {{0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(NoiseSpectrum::tabulated(ref_params, {{0.0, 1.0}, {0.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(NoiseSpectrum::tabulated(ref_params, {{0.0, 1.0}, {1.0, -1.0}}),
                    std::invalid_argument);
}

TEST_CASE("noise grid construction and mirror table") {
    const auto grid = NoiseGrid::cubic(4e7, 5);
    CHECK(grid.size() == 125);
    CHECK(grid.dk == doctest::Approx(2e7));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto j = static_cast<std::size_t>(grid.mirror[i]);
        CHECK((grid.points[i] + grid.points[j]).norm() == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(NoiseGrid::cubic(4e7, 4), std::invalid_argument); // even
    CHECK_THROWS_AS(NoiseGrid::cubic(-1.0, 5), std::invalid_argument);

    NoiseGrid broken = grid;
    broken.points[3] = Eigen::Vector3d(1.0, 2.0, 3.0); // breaks inversion symmetry
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("white path: determinism, mirror pairing, moments") {
    const auto grid = NoiseGrid::cubic(4e7, 3);
    const double dt = 1e-13;
    const int steps = 400; // 400 * 27 points

    const auto path1 = synthesize_white_path(ref_params, grid, dt, steps, 99);
    const auto path2 = synthesize_white_path(ref_params, grid, dt, steps, 99);
    CHECK(path1.increments == path2.increments); // bitwise determinism

    const auto path3 = synthesize_white_path(ref_params, grid, dt, steps, 100);
    CHECK(path1.increments != path3.increments);

    // mirror property holds exactly for every sample
    for (int n = 0; n < steps; ++n)
        for (std::size_t j = 0; j < grid.size(); ++j)
            CHECK(path1.at(n, j) ==
                  std::conj(path1.at(n, static_cast<std::size_t>(grid.mirror[j]))));

    // per-increment variance gamma dt / cell_weight over ~1e5 draws
    const double target = gamma_total(ref_params) * dt / grid.cell_weight();
    const auto big = synthesize_white_path(ref_params, grid, dt, 8000, 4242);
    const double expected_re_var = 0.5 * target;
    double sum_re = 0.0, sum_re2 = 0.0;
    long n_draws = 0;
    for (int n = 0; n < big.steps; ++n)
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (grid.mirror[j] <= static_cast<int>(j)) continue; // one of each pair
            const double re = big.at(n, j).real();
            sum_re += re;
            sum_re2 += re * re;
            ++n_draws;
        }
    CHECK(n_draws >= 100000);
    const double mean = sum_re / static_cast<double>(n_draws);
    const double var = sum_re2 / static_cast<double>(n_draws) - mean * mean;
    // 3 sigma bands for the mean and variance estimators
    CHECK(std::abs(mean) < 3.0 * std::sqrt(expected_re_var / static_cast<double>(n_draws)));
    CHECK(std::abs(var - expected_re_var) <
          3.0 * expected_re_var * std::sqrt(2.0 / static_cast<double>(n_draws - 1)));

    // pair correlation between distinct, non-mirrored points stays at zero
    const std::size_t probe = 1, other = 2;
    REQUIRE(grid.mirror[probe] != static_cast<int>(probe));
    REQUIRE(grid.mirror[probe] != static_cast<int>(other));
    double cross = 0.0;
    for (int n = 0; n < big.steps; ++n)
        cross += big.at(n, probe).real() * big.at(n, other).real();
    CHECK(std::abs(cross / big.steps) < 3.0 * expected_re_var / std::sqrt(double(big.steps)));

    // independence across time steps: lag-1 autocorrelation at one point
    double lag1 = 0.0;
    for (int n = 0; n + 1 < big.steps; ++n)
        lag1 += big.at(n, probe).real() * big.at(n + 1, probe).real();
    CHECK(std::abs(lag1 / (big.steps - 1)) <
          3.0 * expected_re_var / std::sqrt(double(big.steps - 1)));

    // the origin is self-mirrored: real increments with the full variance
    const std::size_t origin = static_cast<std::size_t>(grid.size() / 2);
    REQUIRE(grid.points[origin].norm() == 0.0);
    double sum_full = 0.0;
    for (int n = 0; n < big.steps; ++n) {
        CHECK(big.at(n, origin).imag() == 0.0);
        sum_full += big.at(n, origin).real() * big.at(n, origin).real();
    }
    const double n_origin = static_cast<double>(big.steps);
    CHECK(std::abs(sum_full / n_origin - target) <
          3.0 * target * std::sqrt(2.0 / (n_origin - 1.0)));
}

TEST_CASE("white path input validation") {
    const auto grid = NoiseGrid::cubic(4e7, 3);
    CHECK_THROWS_AS(synthesize_white_path(ref_params, grid, -1.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(synthesize_white_path(ref_params, grid, 1e-13, 0, 1), std::invalid_argument);
    NoiseGrid broken = grid;
    broken.points[0] = Eigen::Vector3d(9.0, 9.0, 9.0);
    CHECK_THROWS_AS(synthesize_white_path(ref_params, broken, 1e-13, 10, 1),
                    std::invalid_argument);
}

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

#include "cslheat/heating.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cslheat/constants.hpp"
#include "cslheat/errors.hpp"
#include "cslheat/material.hpp"
#include "cslheat/noise.hpp"
#include "cslheat/quadrature.hpp"

namespace cslheat {

std::string to_string(RateMethod m) {
    switch (m) {
    case RateMethod::WhiteAnalytic: return "white-analytic";
    case RateMethod::NonWhiteQuadrature: return "nonwhite-quadrature";
    case RateMethod::McEstimate: return "mc-estimate";
    }
    return "?";
}

HeatingRate rate_white(const CslParams& p, const Material& mat) {
    p.validate();
    mat.validate();
    const double hb = constants.hbar;
    const double m0 = constants.m0;
    const double q = 3.0 * hb * hb * p.lambda * mat.density / (4.0 * m0 * m0 * p.r_c * p.r_c);
    return HeatingRate{q, q / mat.density, RateMethod::WhiteAnalytic, 0.0};
}

double energy_growth_white(const CslParams& p, double total_mass, double t) {
    p.validate();
    if (!(total_mass >= 0.0)) throw std::invalid_argument("total mass must be >= 0");
    if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
    const double hb = constants.hbar;
    const double m0 = constants.m0;
    return t * 3.0 * hb * hb * p.lambda * total_mass / (4.0 * m0 * m0 * p.r_c * p.r_c);
}

HeatingRate rate_nonwhite(const NoiseSpectrum& spectrum, const Material& mat, double rel_tol) {
    NonWhiteOptions opt;
    opt.rel_tol = rel_tol;
    return rate_nonwhite(spectrum, mat, opt);
}

HeatingRate rate_nonwhite(const NoiseSpectrum& spectrum, const Material& mat,
                          const NonWhiteOptions& opt) {
    mat.validate();
    if (!(opt.rel_tol > 0.0) || opt.rel_tol > 1e-3)
        throw std::invalid_argument("nonwhite tolerance must be in (0, 1e-3]");

    const double hb = constants.hbar;
    const double m0 = constants.m0;
    const double v = mat.v_eff;
    const double rc = spectrum.params().r_c;
    const double w_scale = v / rc; // Gaussian envelope cutoff

    // integrate in u = omega rc / v_eff; the integrand u^4 e^{-u^2} is O(1)
    const double envelope_eps = std::min(opt.rel_tol, 1e-10) * 1e-2;
    double u_max = std::sqrt(std::log(1.0 / envelope_eps));
    if (opt.truncate_at_debye) u_max = std::min(u_max, debye_frequency(mat) / w_scale);

    std::vector<double> breaks;
    const double support = spectrum.support_end();
    if (std::isfinite(support)) {
        const double u_support = support / w_scale;
        u_max = std::min(u_max, u_support);
        if (spectrum.kind() == SpectrumKind::Tabulated)
            for (const auto& kn : spectrum.knots()) breaks.push_back(kn[0] / w_scale);
    }

    auto integrand = [&](double u) {
        const double w = u * w_scale;
        return u * u * u * u * std::exp(-u * u) * spectrum.value(w);
    };
    const auto q = integrate_adaptive(integrand, 0.0, u_max, opt.rel_tol * 0.1, 0.0, breaks);

    const double prefactor = hb * hb * mat.density /
                             (4.0 * M_PI * M_PI * m0 * m0 * v * v * v * v * v) *
                             std::pow(w_scale, 5.0);
    const double q_dot = prefactor * q.value;
    const double err = prefactor * q.error;
    if (!q.converged)
        throw numeric_error("nonwhite rate quadrature did not converge (best estimate " +
                                std::to_string(q_dot) + " W/m^3)",
                            q_dot);
    return HeatingRate{q_dot, q_dot / mat.density, RateMethod::NonWhiteQuadrature, err};
}

} // namespace cslheat

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

#include "cslheat/mc.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "cslheat/constants.hpp"
#include "cslheat/errors.hpp"
#include "cslheat/rng.hpp"

namespace cslheat {

namespace {

const std::complex<double> imag_unit(0.0, 1.0);

double max_mode_omega(const ModeGrid& grid) {
    double m = 0.0;
    for (const auto& mode : grid.modes) m = std::max(m, mode.omega);
    return m;
}

// C_ks(q) = w(q) e^{-rc^2 q^2/2} (M/m0) sum_i e^{-i q.R_i} eta_{i,ks}(q)
Eigen::MatrixXcd coupling_matrix(const ModeGrid& grid, const NoiseGrid& probes,
                                 const CslParams& params) {
    const double mass_ratio = grid.atom_mass / constants.m0;
    const double w = probes.cell_weight();
    const double rc2 = params.r_c * params.r_c;

    Eigen::MatrixXcd c(static_cast<Eigen::Index>(grid.modes.size()),
                       static_cast<Eigen::Index>(probes.size()));
    for (std::size_t mi = 0; mi < grid.modes.size(); ++mi) {
        const PhononMode& mode = grid.modes[mi];
        for (std::size_t qi = 0; qi < probes.size(); ++qi) {
            const Eigen::Vector3d& q = probes.points[qi];
            const double envelope = std::exp(-0.5 * rc2 * q.squaredNorm());
            c(static_cast<Eigen::Index>(mi), static_cast<Eigen::Index>(qi)) =
                w * envelope * mass_ratio * site_sum_eta(grid, mode, q);
        }
    }
    return c;
}

// 95% chi-square quantile, Wilson-Hilferty approximation
double chi2_quantile_95(int dof) {
    const double k = dof;
    const double z = 1.6448536269514722;
    const double c = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * c * c * c;
}

} // namespace

void McConfig::validate() const {
    if (grid.modes.empty()) throw std::invalid_argument("mc: mode grid is empty");
    if (!(probe_extent > 0.0)) throw std::invalid_argument("mc: probe extent must be > 0");
    if (probe_points_per_axis < 3 || probe_points_per_axis % 2 == 0)
        throw std::invalid_argument("mc: probe points per axis must be odd and >= 3");
    if (!(dt > 0.0)) throw std::invalid_argument("mc: dt must be > 0");
    if (steps < 2) throw std::invalid_argument("mc: steps must be >= 2");
    if (trajectories < 2) throw std::invalid_argument("mc: trajectories must be >= 2");
    if (checkpoints < 2 || checkpoints > steps)
        throw std::invalid_argument("mc: checkpoints must be in [2, steps]");
    const double w_max = max_mode_omega(grid);
    if (!(dt * w_max < 0.1))
        throw std::invalid_argument("mc: dt * max(omega) must be < 0.1 (resolution guard)");
}

double discrete_oracle_slope(const ModeGrid& grid, const NoiseGrid& probes,
                             const CslParams& params) {
    params.validate();
    probes.validate();
    const double gamma = gamma_total(params);
    const double w = probes.cell_weight();
    const Eigen::MatrixXcd c = coupling_matrix(grid, probes, params);

    double slope = 0.0;
    for (std::size_t mi = 0; mi < grid.modes.size(); ++mi) {
        const double hw = constants.hbar * grid.modes[mi].omega;
        double acc = 0.0;
        for (std::size_t qi = 0; qi < probes.size(); ++qi)
            acc += std::norm(c(static_cast<Eigen::Index>(mi), static_cast<Eigen::Index>(qi)));
        slope += hw * acc * gamma / w;
    }
    return slope;
}

std::vector<double> oracle_refinement(const ModeGrid& grid, double probe_extent,
                                      const std::vector<int>& points_per_axis,
                                      const CslParams& params) {
    std::vector<double> out;
    out.reserve(points_per_axis.size());
    for (int n : points_per_axis)
        out.push_back(discrete_oracle_slope(grid, NoiseGrid::cubic(probe_extent, n), params));
    return out;
}

McResult mc_energy_growth(const McConfig& cfg, const CslParams& params) {
    cfg.validate();
    params.validate();

    const NoiseGrid probes = NoiseGrid::cubic(cfg.probe_extent, cfg.probe_points_per_axis);
    const Eigen::MatrixXcd c = coupling_matrix(cfg.grid, probes, params);
    const std::size_t n_modes = cfg.grid.modes.size();

    Eigen::VectorXd hw(static_cast<Eigen::Index>(n_modes));
    Eigen::VectorXd omega(static_cast<Eigen::Index>(n_modes));
    for (std::size_t mi = 0; mi < n_modes; ++mi) {
        omega[static_cast<Eigen::Index>(mi)] = cfg.grid.modes[mi].omega;
        hw[static_cast<Eigen::Index>(mi)] = constants.hbar * cfg.grid.modes[mi].omega;
    }

    // checkpoint step indices, last one at the final step
    std::vector<int> check_steps;
    for (int j = 1; j <= cfg.checkpoints; ++j)
        check_steps.push_back(static_cast<int>(std::lround(
            static_cast<double>(j) * cfg.steps / cfg.checkpoints)));

    McResult res;
    res.discrete_oracle = discrete_oracle_slope(cfg.grid, probes, params);
    for (int s : check_steps) res.times.push_back(s * cfg.dt);

    const int n_check = static_cast<int>(check_steps.size());
    Eigen::MatrixXd curves(cfg.trajectories, n_check);

    Eigen::VectorXcd b(static_cast<Eigen::Index>(n_modes));
    Eigen::VectorXcd dw(static_cast<Eigen::Index>(probes.size()));
    for (int traj = 0; traj < cfg.trajectories; ++traj) {
        const NoisePath path = synthesize_white_path(
            params, probes, cfg.dt, cfg.steps,
            derive_stream(cfg.seed, static_cast<std::uint64_t>(traj)));
        b.setZero();
        int ci = 0;
        for (int n = 0; n < cfg.steps; ++n) {
            for (std::size_t qi = 0; qi < probes.size(); ++qi)
                dw[static_cast<Eigen::Index>(qi)] = path.at(n, qi);
            const double t_n = n * cfg.dt;
            const Eigen::VectorXcd drive = c * dw;
            for (std::size_t mi = 0; mi < n_modes; ++mi) {
                const auto i = static_cast<Eigen::Index>(mi);
                b[i] += imag_unit * std::exp(imag_unit * (omega[i] * t_n)) * drive[i];
            }
            if (ci < n_check && n + 1 == check_steps[static_cast<std::size_t>(ci)]) {
                curves(traj, ci) = hw.dot(b.cwiseAbs2());
                ++ci;
            }
        }
    }

    // ensemble mean and per-checkpoint standard errors
    Eigen::VectorXd mean = curves.colwise().mean();
    Eigen::MatrixXd centered = curves.rowwise() - mean.transpose();
    Eigen::MatrixXd cov = centered.transpose() * centered / (cfg.trajectories - 1);
    for (int j = 0; j < n_check; ++j) {
        res.mean_energy.push_back(mean[j]);
        res.stderr_energy.push_back(std::sqrt(cov(j, j) / cfg.trajectories));
    }

    const bool degenerate = cov.diagonal().maxCoeff() <= 0.0;
    Eigen::Map<const Eigen::VectorXd> tvec(res.times.data(), n_check);
    if (degenerate) {
        // no noise (lambda = 0): exact zero signal
        res.slope = 0.0;
        res.slope_se = 0.0;
        res.chi2 = 0.0;
        res.chi2_threshold_95 = chi2_quantile_95(std::max(1, n_check - 1));
        res.linear_model_ok = true;
        return res;
    }

    // GLS fit of <dE>(t) = s t through the origin, with the covariance of
    // the mean curve estimated from the trajectory ensemble
    Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
    const Eigen::VectorXd cov_inv_t = ldlt.solve(tvec);
    const double denom = tvec.dot(cov_inv_t);
    res.slope = mean.dot(cov_inv_t) / denom;
    res.slope_se = std::sqrt(1.0 / (denom * cfg.trajectories));

    const Eigen::VectorXd resid = mean - res.slope * tvec;
    res.chi2 = cfg.trajectories * resid.dot(ldlt.solve(resid));
    res.chi2_threshold_95 = chi2_quantile_95(std::max(1, n_check - 1));
    res.linear_model_ok = res.chi2 <= res.chi2_threshold_95;
    return res;
}

} // namespace cslheat

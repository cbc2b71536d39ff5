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

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace cslheat {

/// Scalar noise driving a small system through V(t) = -hbar xi(t) L.
/// gamma_eff is the spectral density at omega = 0, so the exponential
/// kernel f(t) = gamma_eff/(2 tau_c) exp(-|t|/tau_c) tends to the white
/// correlation gamma_eff delta(t) as tau_c -> 0.
struct NoiseModel {
    enum class Kind { White, Exponential };
    Kind kind = Kind::White;
    double gamma_eff = 0.0; // 1/s
    double tau_c = 0.0;     // s, Exponential only

    double correlation(double t) const;
    void validate() const;
};

struct SmallSystem {
    Eigen::MatrixXcd h0;   // J, Hermitian to 1e-12
    Eigen::MatrixXcd l_op; // dimensionless coupling operator
    NoiseModel noise;

    int dim() const { return static_cast<int>(h0.rows()); }
    void validate() const; // dim in [2,16], Hermiticity of h0
};

/// Second-order time-ordered-cumulant master equation
///   d rho/dt = -(i/hbar)[H0, rho] - [L, [K(t), rho]],
///   K(t) = int_0^t f(tau) exp(-i H0 tau/hbar) L exp(+i H0 tau/hbar) dtau.
/// White noise uses the closed form K = (gamma_eff/2) L (double
/// commutator generator); the exponential kernel is accumulated by
/// trapezoidal quadrature on the step grid, truncated at 8 tau_c.
/// Fixed-step RK4 in rho with Hermitian symmetrization each step; trace
/// drift beyond 1e-8 raises numeric_error.
Eigen::MatrixXcd evolve_master_second_cumulant(const SmallSystem& sys,
                                               const Eigen::MatrixXcd& rho0,
                                               double t, double dt);
std::vector<Eigen::MatrixXcd> evolve_master_second_cumulant_sampled(
    const SmallSystem& sys, const Eigen::MatrixXcd& rho0,
    const std::vector<double>& sample_times, double dt);

struct TrajectoryEnsemble {
    std::vector<double> times;
    std::vector<Eigen::MatrixXcd> mean_rho;            // one per sample time
    std::vector<std::vector<Eigen::VectorXcd>> states; // [time][trajectory], if retained
};

/// Unitary-splitting stochastic trajectories: per step
/// psi <- exp(-i H0 dt/hbar + i L dW) psi for white noise, and the
/// trapezoid-averaged Ornstein-Uhlenbeck drive for exponential noise.
/// Requires Hermitian l_op (unitary steps); each trajectory consumes a
/// counter-derived stream, so the ensemble is reproducible regardless
/// of evaluation order. Norm drift beyond 1e-8 raises numeric_error.
TrajectoryEnsemble evolve_trajectories_sampled(const SmallSystem& sys,
                                               const Eigen::VectorXcd& psi0,
                                               const std::vector<double>& sample_times,
                                               double dt, int n_traj, std::uint64_t seed,
                                               bool keep_states = false);
Eigen::MatrixXcd evolve_trajectories(const SmallSystem& sys, const Eigen::VectorXcd& psi0,
                                     double t, double dt, int n_traj, std::uint64_t seed);

/// (1/2) tr |a - b| for Hermitian a, b.
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Bootstrap standard error of trace_distance(mean of resampled pure
/// states, reference).
double bootstrap_trace_distance_se(const std::vector<Eigen::VectorXcd>& states,
                                   const Eigen::MatrixXcd& reference, int n_boot,
                                   std::uint64_t seed);

/// Job description for the cumulant CLI. File keys: dim, h0 (rad/s,
/// rows ';'-separated, entries like 1, 2i, 1-0.5i), l, noise
/// (white:GAMMA | exp:GAMMA:TAU), psi0, t, dt, trajectories, samples.
struct CumulantJob {
    SmallSystem system;
    Eigen::VectorXcd psi0;
    double t_end = 0.0;
    double dt = 0.0;
    int trajectories = 2000;
    int samples = 20;
};

CumulantJob load_cumulant_job(const std::string& path);

} // namespace cslheat

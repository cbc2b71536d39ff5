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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "cslheat/config.hpp"
#include "cslheat/constants.hpp"
#include "cslheat/cumulant.hpp"
#include "cslheat/diffusion.hpp"
#include "cslheat/heating.hpp"
#include "cslheat/material.hpp"
#include "cslheat/mc.hpp"
#include "cslheat/noise.hpp"
#include "cslheat/scenario.hpp"
#include "cslheat/sde.hpp"

using namespace cslheat;

namespace {

int failures = 0;

struct Criterion {
    int id;
    std::string label;
    std::vector<std::string> notes;
    bool ok = true;
    double seconds = 0.0;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("FAILED: " + what);
        }
    }
};

void run(int id, const std::string& label, double time_budget_s,
         const std::function<void(Criterion&)>& body) {
    Criterion c{id, label, {}, true, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.notes.push_back(std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_budget_s > 0.0 && c.seconds > time_budget_s) {
        c.ok = false;
        c.notes.push_back("runtime " + std::to_string(c.seconds) + " s over budget " +
                          std::to_string(time_budget_s) + " s");
    }
    std::printf("[%s] criterion %d: %s (%.2f s)\n", c.ok ? "PASS" : "FAIL", c.id,
                c.label.c_str(), c.seconds);
    for (const auto& n : c.notes) std::printf("       %s\n", n.c_str());
    if (!c.ok) ++failures;
}

const CslParams ref_params{1e-8, 1e-7};

} // namespace

int main() {
    // 1. copper reproduction
    run(1, "copper core temperature 200/100 * lambda within 15%", 1.0, [](Criterion& c) {
        Scenario s = builtin_scenario("cu-cuore");
        s.output_dir = "-";
        const RunReport r80 = run_scenario(s);
        const double per_lambda_80 = r80.core_delta_linearized / s.csl.lambda;
        c.expect(std::abs(per_lambda_80 - 200.0) <= 0.15 * 200.0,
                 "k0=80: delta/lambda = " + std::to_string(per_lambda_80));

        Scenario s170 = s;
        s170.material.k0 = 170.0;
        const RunReport r170 = run_scenario(s170);
        const double per_lambda_170 = r170.core_delta_linearized / s.csl.lambda;
        c.expect(std::abs(per_lambda_170 - 100.0) <= 0.15 * 100.0,
                 "k0=170: delta/lambda = " + std::to_string(per_lambda_170));
        c.notes.push_back("delta/lambda = " + std::to_string(per_lambda_80) + " (k0=80), " +
                          std::to_string(per_lambda_170) + " (k0=170)");
    });

    // 2. TeO2 reproduction
    run(2, "TeO2 sphere core temperature 1e4 * lambda within 15%", 1.0, [](Criterion& c) {
        Scenario s = builtin_scenario("teo2-cuore");
        s.output_dir = "-";
        const RunReport r = run_scenario(s);
        const double per_lambda = r.core_delta_linearized / s.csl.lambda;
        c.expect(std::abs(per_lambda - 1e4) <= 0.15 * 1e4,
                 "delta/lambda = " + std::to_string(per_lambda));
        c.expect(s.geometry.length == 0.031, "builtin radius is 3.1 cm");
        c.notes.push_back("delta/lambda = " + std::to_string(per_lambda));
    });

    // 3. white/non-white consistency
    run(3, "flat-spectrum quadrature equals the white closed form to 1e-6", 1.0,
        [](Criterion& c) {
            const Material cu = builtin_material("Cu");
            const HeatingRate w = rate_white(ref_params, cu);
            const HeatingRate nw = rate_nonwhite(NoiseSpectrum::flat(ref_params), cu, 1e-8);
            const double rel = std::abs(nw.q_dot - w.q_dot) / w.q_dot;
            c.expect(rel <= 1e-6, "relative gap " + std::to_string(rel));
            c.notes.push_back("relative gap = " + sci(rel));
        });

    // 4. cutoff limiting regimes
    run(4, "step-cutoff limits: (8/15 sqrt(pi)) x^5 at x=0.01, unity at x=100", 5.0,
        [](Criterion& c) {
            const Material cu = builtin_material("Cu");
            const double w_rate = rate_white(ref_params, cu).q_dot;
            const double v_over_rc = cu.v_eff / ref_params.r_c;

            const double r_small =
                rate_nonwhite(NoiseSpectrum::step_cutoff(ref_params, 0.01 * v_over_rc), cu, 1e-8)
                    .q_dot /
                w_rate;
            const double predicted = 8.0 * std::pow(0.01, 5) / (15.0 * std::sqrt(M_PI));
            c.expect(std::abs(r_small - predicted) <= 0.01 * predicted,
                     "small-cutoff ratio " + sci(r_small) + " vs " + sci(predicted));

            const double r_big =
                rate_nonwhite(NoiseSpectrum::step_cutoff(ref_params, 100.0 * v_over_rc), cu, 1e-8)
                    .q_dot /
                w_rate;
            c.expect(r_big >= 1.0 - 1e-4 && r_big <= 1.0 + 1e-6,
                     "large-cutoff ratio " + sci(r_big));
            c.notes.push_back("ratios: " + sci(r_small) + " (x=0.01), " + sci(r_big) +
                              " (x=100)");
        });

    // 5. BVP oracle vs closed form
    run(5, "finite-difference BVP matches the sphere closed form; order 2", 60.0,
        [](Criterion& c) {
            const Material cu = builtin_material("Cu");
            const double ts = 0.03, k0 = 80.0;
            const double q_phys = rate_white(ref_params, cu).q_dot;
            const auto geom = Geometry::sphere(1.0);

            const auto fd = solve_bvp_oracle(ts, q_phys, k0, geom, 1024);
            double max_rel = 0.0;
            for (const auto& smp : fd.samples) {
                const double x = smp.r / geom.length;
                const double exact =
                    std::sqrt(ts * ts + (q_phys / (3.0 * k0)) * (1.0 - x * x));
                max_rel = std::max(max_rel, std::abs(smp.t_exact - exact) / exact);
            }
            c.expect(max_rel < 1e-8, "mesh-1024 max relative error " + sci(max_rel));

            // convergence order at a strong load, where the error is measurable
            const double q_big = 3.0 * k0 * ts * ts; // load parameter 1
            auto err = [&](int mesh) {
                const auto sol = solve_bvp_oracle(ts, q_big, k0, geom, mesh);
                double m = 0.0;
                for (const auto& smp : sol.samples) {
                    const double x = smp.r / geom.length;
                    const double exact =
                        std::sqrt(ts * ts + (q_big / (3.0 * k0)) * (1.0 - x * x));
                    m = std::max(m, std::abs(smp.t_exact - exact) / exact);
                }
                return m;
            };
            const double e256 = err(256), e512 = err(512), e1024 = err(1024);
            const double order = 0.5 * (std::log2(e256 / e512) + std::log2(e512 / e1024));
            c.expect(std::abs(order - 2.0) <= 0.2, "measured order " + std::to_string(order));
            c.notes.push_back("max rel error (mesh 1024) = " + sci(max_rel) +
                              ", measured order = " + std::to_string(order));
        });

    // 6. MC verifier
    run(6, "MC slope within 3 SE of the discrete oracle; oracle refines monotonically", 300.0,
        [](Criterion& c) {
            Material toy = builtin_material("Cu");
            toy.lattice_param = 2.0 * ref_params.r_c;
            toy.v_eff = 5000.0;

            McConfig cfg;
            cfg.grid = build_grid(4, toy);
            cfg.probe_extent = 4.0 / ref_params.r_c;
            cfg.probe_points_per_axis = 5;
            double w_max = 0.0;
            for (const auto& m : cfg.grid.modes) w_max = std::max(w_max, m.omega);
            cfg.dt = 0.05 / w_max;
            cfg.steps = 60;
            cfg.trajectories = 1000;
            cfg.checkpoints = 10;
            cfg.seed = 20260810;

            const McResult res = mc_energy_growth(cfg, ref_params);
            const double z = std::abs(res.slope - res.discrete_oracle) /
                             (res.slope_se > 0 ? res.slope_se : 1.0);
            c.expect(z <= 3.0, "slope z-score " + std::to_string(z));
            c.expect(res.linear_model_ok, "mean curve consistent with a line through origin");

            const double continuum =
                energy_growth_white(ref_params, toy.cell_masses[0] * cfg.grid.n_sites(), 1.0);
            const auto oracles =
                oracle_refinement(cfg.grid, cfg.probe_extent, {5, 9, 17}, ref_params);
            std::vector<double> gaps;
            for (double o : oracles) gaps.push_back(std::abs(o - continuum) / continuum);
            c.expect(gaps[0] > gaps[1] && gaps[1] > gaps[2],
                     "gaps not monotone: " + sci(gaps[0]) + ", " + sci(gaps[1]) + ", " +
                         sci(gaps[2]));
            // the residual gap is the excluded k = 0 translation weight, O(1/N)
            c.expect(gaps[2] < 3.0 / cfg.grid.n_sites(),
                     "final gap " + sci(gaps[2]) + " above the finite-size scale");
            c.notes.push_back("slope z = " + std::to_string(z) + ", refinement gaps = " +
                              sci(gaps[0]) + " / " + sci(gaps[1]) + " / " + sci(gaps[2]));
        });

    // 7. cumulant lab
    run(7, "white dephasing: trajectories vs master equation; exp(-2gt) decay", 300.0,
        [](Criterion& c) {
            const double g = 1.0;
            SmallSystem sys;
            sys.h0 = Eigen::MatrixXcd::Zero(2, 2);
            sys.l_op = Eigen::MatrixXcd::Zero(2, 2);
            sys.l_op(0, 0) = 1.0;
            sys.l_op(1, 1) = -1.0;
            sys.noise = NoiseModel{NoiseModel::Kind::White, g, 0.0};

            Eigen::VectorXcd psi0(2);
            psi0 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
            const Eigen::MatrixXcd rho0 = psi0 * psi0.adjoint();

            const std::vector<double> times{0.1 / g, 0.5 / g, 1.0 / g};
            const double dt = 1e-3 / g;
            const auto me = evolve_master_second_cumulant_sampled(sys, rho0, times, dt);
            for (std::size_t i = 0; i < times.size(); ++i) {
                const double expected = 0.5 * std::exp(-2.0 * g * times[i]);
                const double got = me[i](0, 1).real();
                c.expect(std::abs(got - expected) <= 0.01 * expected,
                         "off-diagonal at g t = " + std::to_string(g * times[i]));
                c.expect(std::abs(me[i].trace().real() - 1.0) < 1e-10 &&
                             std::abs(me[i].trace().imag()) < 1e-10,
                         "trace preserved to 1e-10");
                c.expect((me[i] - me[i].adjoint()).cwiseAbs().maxCoeff() < 1e-10,
                         "Hermiticity preserved to 1e-10");
            }

            const auto ens =
                evolve_trajectories_sampled(sys, psi0, times, dt, 2000, 7070, true);
            double worst = 0.0;
            for (std::size_t i = 0; i < times.size(); ++i) {
                const double dist = trace_distance(ens.mean_rho[i], me[i]);
                const double se = bootstrap_trace_distance_se(ens.states[i], me[i], 200, 11);
                c.expect(dist <= std::max(3.0 * se, 0.02),
                         "trace distance " + sci(dist) + " at t=" + std::to_string(times[i]) +
                             " (3*CI " + sci(3.0 * se) + ")");
                worst = std::max(worst, dist);
                c.expect(std::abs(ens.mean_rho[i].trace().real() - 1.0) < 1e-10,
                         "ensemble trace preserved");
            }
            c.notes.push_back("worst trajectory/ME trace distance = " + sci(worst));
        });

    // 8. SDE conversion
    run(8, "Stratonovich<->Ito conversion identities", 5.0, [](Criterion& c) {
        std::mt19937_64 eng(808);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const int d = 1 + static_cast<int>(eng() % 4);
            const int m = static_cast<int>(eng() % 3);
            LinearSde s;
            s.A = Eigen::MatrixXd::NullaryExpr(d, d, [&] { return u(eng); });
            s.a = Eigen::VectorXd::NullaryExpr(d, [&] { return u(eng); });
            for (int j = 0; j < m; ++j) {
                s.B.push_back(Eigen::MatrixXd::NullaryExpr(d, d, [&] { return u(eng); }));
                s.b.push_back(Eigen::VectorXd::NullaryExpr(d, [&] { return u(eng); }));
            }
            const LinearSde rt = ito_to_strat(strat_to_ito(s));
            const double scale = s.A.cwiseAbs().maxCoeff() + s.a.cwiseAbs().maxCoeff() + 1.0;
            const double gap = std::max((rt.A - s.A).cwiseAbs().maxCoeff(),
                                        (rt.a - s.a).cwiseAbs().maxCoeff()) /
                               scale;
            worst = std::max(worst, gap);
        }
        c.expect(worst <= 1e-14, "round-trip relative gap " + sci(worst));

        LinearSde additive;
        additive.A = Eigen::MatrixXd::Constant(2, 2, 0.3);
        additive.a = Eigen::VectorXd::Constant(2, -0.1);
        additive.B = {Eigen::MatrixXd::Zero(2, 2)};
        additive.b = {Eigen::VectorXd::Constant(2, 0.8)};
        const LinearSde conv = strat_to_ito(additive);
        c.expect((conv.A - additive.A).cwiseAbs().maxCoeff() == 0.0 &&
                     (conv.a - additive.a).cwiseAbs().maxCoeff() == 0.0,
                 "additive-noise conversion is the identity");

        LinearSde scalar;
        scalar.A = Eigen::MatrixXd::Constant(1, 1, -2.0);
        scalar.a = Eigen::VectorXd::Zero(1);
        scalar.B = {Eigen::MatrixXd::Constant(1, 1, 0.5)};
        scalar.b = {Eigen::VectorXd::Zero(1)};
        c.expect(strat_to_ito(scalar).A(0, 0) == -2.0 + 0.5 * 0.5 * 0.5,
                 "scalar drift correction A + beta^2/2");
        c.notes.push_back("round-trip worst relative gap = " + sci(worst));
    });

    // 9. property suite
    run(9, "randomized property suite (>= 100 draws each)", 120.0, [](Criterion& c) {
        std::mt19937_64 eng(909);
        std::uniform_real_distribution<double> u(0.2, 5.0);
        const Material cu = builtin_material("Cu");

        for (int i = 0; i < 100; ++i) { // q linear in lambda and rho
            const CslParams p{1e-9 * u(eng), 1e-8 * u(eng)};
            const double s = u(eng);
            const double base = rate_white(p, cu).q_dot;
            const double scaled_lambda = rate_white({p.lambda * s, p.r_c}, cu).q_dot;
            if (std::abs(scaled_lambda - s * base) > 1e-12 * scaled_lambda)
                c.expect(false, "lambda linearity at draw " + std::to_string(i));
            Material m2 = cu;
            m2.density *= s;
            const double scaled_rho = rate_white(p, m2).q_dot;
            if (std::abs(scaled_rho - s * base) > 1e-12 * scaled_rho)
                c.expect(false, "rho linearity at draw " + std::to_string(i));
        }

        for (int i = 0; i < 100; ++i) { // the quadrature route is linear too
            const CslParams p{1e-9 * u(eng), 1e-8 * u(eng)};
            const double omega = u(eng) * cu.v_eff / p.r_c;
            const double s = u(eng);
            const double base =
                rate_nonwhite(NoiseSpectrum::step_cutoff(p, omega), cu, 1e-6).q_dot;
            const double scaled_lambda =
                rate_nonwhite(NoiseSpectrum::step_cutoff({p.lambda * s, p.r_c}, omega), cu, 1e-6)
                    .q_dot;
            if (std::abs(scaled_lambda - s * base) > 1e-5 * scaled_lambda)
                c.expect(false, "nonwhite lambda linearity at draw " + std::to_string(i));
            Material m2 = cu;
            m2.density *= s;
            const double scaled_rho =
                rate_nonwhite(NoiseSpectrum::step_cutoff(p, omega), m2, 1e-6).q_dot;
            if (std::abs(scaled_rho - s * base) > 1e-5 * scaled_rho)
                c.expect(false, "nonwhite rho linearity at draw " + std::to_string(i));
        }

        for (int i = 0; i < 100; ++i) { // q monotone in the cutoff
            const double v_over_rc = cu.v_eff / ref_params.r_c;
            double x1 = 0.05 + u(eng), x2 = 0.05 + u(eng);
            if (x1 > x2) std::swap(x1, x2);
            const double q1 =
                rate_nonwhite(NoiseSpectrum::step_cutoff(ref_params, x1 * v_over_rc), cu, 1e-6)
                    .q_dot;
            const double q2 =
                rate_nonwhite(NoiseSpectrum::step_cutoff(ref_params, x2 * v_over_rc), cu, 1e-6)
                    .q_dot;
            if (!(q1 <= q2 * (1.0 + 1e-9)))
                c.expect(false, "cutoff monotonicity at draw " + std::to_string(i));
        }

        for (int i = 0; i < 100; ++i) { // profile monotone in r
            const double ts = 0.005 + 0.05 * u(eng);
            const double q = 1e-5 * u(eng);
            const double k0 = u(eng) * 20.0;
            const auto prof = profile(ts, q, k0, Geometry::sphere(0.01 * u(eng)), 33);
            for (std::size_t j = 1; j < prof.samples.size(); ++j)
                if (prof.samples[j].t_exact > prof.samples[j - 1].t_exact * (1.0 + 1e-14))
                    c.expect(false, "profile monotonicity at draw " + std::to_string(i));
        }

        for (int i = 0; i < 100; ++i) { // slab/sphere linearized ratio exactly 3
            const double ts = 0.005 + 0.05 * u(eng);
            const double q = 1e-5 * u(eng);
            const double k0 = u(eng) * 20.0;
            const double len = 0.01 * u(eng);
            const auto sphere = core_temperature_delta(ts, q, k0, Geometry::sphere(len));
            const auto slab = core_temperature_delta(ts, q, k0, Geometry::slab(len));
            if (slab.second != 3.0 * sphere.second)
                c.expect(false, "slab/sphere ratio at draw " + std::to_string(i));
        }
        c.notes.push_back("500 randomized draws checked");
    });

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures);
    return failures == 0 ? 0 : 1;
}

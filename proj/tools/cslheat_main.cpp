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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cslheat/config.hpp"
#include "cslheat/cumulant.hpp"
#include "cslheat/diffusion.hpp"
#include "cslheat/errors.hpp"
#include "cslheat/heating.hpp"
#include "cslheat/material.hpp"
#include "cslheat/mc.hpp"
#include "cslheat/noise.hpp"
#include "cslheat/scenario.hpp"
#include "cslheat/sde.hpp"

namespace {

using namespace cslheat;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

struct GlobalOpts {
    std::string config;
    std::string output = ".";
    std::uint64_t seed = 0;
    std::string format = "csv";
};

struct MaterialFlags {
    std::string name = "Cu";
    std::string db_path;
    std::optional<double> density, veff, k0;
    std::string lattice_param;

    Material resolve() const {
        Material m = db_path.empty() ? builtin_material(name) : load_material(db_path, name);
        MaterialOverrides ov;
        ov.density = density;
        ov.v_eff = veff;
        ov.k0 = k0;
        if (!lattice_param.empty()) ov.lattice_param = parse_length(lattice_param);
        return apply_overrides(m, ov);
    }
};

void add_material_flags(CLI::App* cmd, MaterialFlags& mf) {
    cmd->add_option("--material", mf.name, "material name (builtin or in --material-db)");
    cmd->add_option("--material-db", mf.db_path, "material database file");
    cmd->add_option("--density", mf.density, "override density [kg/m^3]");
    cmd->add_option("--veff", mf.veff, "override effective sound velocity [m/s]");
    cmd->add_option("--k0", mf.k0, "override conductivity coefficient [W/(m K^2)]");
    cmd->add_option("--lattice-param", mf.lattice_param, "override lattice parameter (m, cm, A)");
}

void emit_report(const RunReport& rep, const GlobalOpts& g) {
    if (g.format == "json") std::cout << rep.to_json() << "\n";
    else std::cout << rep.to_csv();
}

int run_cli(int argc, char** argv) {
    CLI::App app{"collapse-noise heating rates, temperature profiles and stochastic verifiers"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--config", g.config, "scenario config file");
    app.add_option("--output", g.output, "output directory ('-' suppresses profile files)");
    app.add_option("--seed", g.seed, "root seed for stochastic subcommands");
    app.add_option("--format", g.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- rate ----
    auto* rate_cmd = app.add_subcommand("rate", "volumetric heating rate");
    MaterialFlags rate_mat;
    add_material_flags(rate_cmd, rate_mat);
    double rate_lambda = 1e-8;
    std::string rate_rc = "1e-7";
    std::string rate_spectrum = "flat";
    double rate_tol = 1e-8;
    bool rate_strict_debye = false;
    rate_cmd->add_option("--lambda", rate_lambda, "collapse rate [1/s]");
    rate_cmd->add_option("--rc", rate_rc, "correlation length (m, cm, nm, A)");
    rate_cmd->add_option("--spectrum", rate_spectrum, "flat | step:OMEGA | file:PATH");
    rate_cmd->add_option("--tol", rate_tol, "relative quadrature tolerance");
    rate_cmd->add_flag("--strict-debye", rate_strict_debye,
                       "truncate the spectral integral at the Debye frequency");

    // ---- profile ----
    auto* prof_cmd = app.add_subcommand("profile", "steady-state temperature profile");
    MaterialFlags prof_mat;
    add_material_flags(prof_cmd, prof_mat);
    std::string prof_geometry = "sphere:0.05";
    std::string prof_ts = "0.03";
    std::optional<double> prof_qdot;
    bool prof_from_rate = false;
    double prof_lambda = 1e-8;
    std::string prof_rc = "1e-7";
    std::string prof_spectrum = "flat";
    int prof_samples = 65;
    prof_cmd->add_option("--geometry", prof_geometry, "sphere:R | slab:L | cylinder:R");
    prof_cmd->add_option("--ts", prof_ts, "surface temperature (K, mK)");
    prof_cmd->add_option("--qdot", prof_qdot, "volumetric heating rate [W/m^3]");
    prof_cmd->add_flag("--from-rate", prof_from_rate, "chain q_dot from the rate computation");
    prof_cmd->add_option("--lambda", prof_lambda, "collapse rate for --from-rate");
    prof_cmd->add_option("--rc", prof_rc, "correlation length for --from-rate");
    prof_cmd->add_option("--spectrum", prof_spectrum, "spectrum for --from-rate");
    prof_cmd->add_option("--samples", prof_samples, "profile sample count");

    // ---- scenario ----
    auto* scen_cmd = app.add_subcommand("scenario", "run a full scenario chain");
    std::string scen_name;
    scen_cmd->add_option("name", scen_name, "builtin scenario name (cu-cuore, teo2-cuore)");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "scenario sweep over one parameter");
    std::string sweep_name;
    std::string sweep_param = "lambda";
    std::vector<double> sweep_values;
    sweep_cmd->add_option("name", sweep_name, "builtin scenario name");
    sweep_cmd->add_option("--param", sweep_param, "lambda | rc | cutoff");
    sweep_cmd->add_option("--values", sweep_values, "sweep values")->expected(-1);

    // ---- mc ----
    auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo energy-growth verifier");
    MaterialFlags mc_mat;
    add_material_flags(mc_cmd, mc_mat);
    int mc_cells = 4;
    std::string mc_toy_lattice = "2e-7";
    double mc_lambda = 1e-8;
    std::string mc_rc = "1e-7";
    double mc_extent_rc = 4.0;
    int mc_probe_points = 5;
    int mc_steps = 60;
    int mc_traj = 1000;
    int mc_checkpoints = 10;
    double mc_dt_factor = 0.05;
    mc_cmd->add_option("--cells", mc_cells, "mode-grid cells per edge (L)");
    mc_cmd->add_option("--toy-lattice", mc_toy_lattice,
                       "toy lattice parameter (m); keep comparable to rc so the probe "
                       "window covers finite-k modes");
    mc_cmd->add_option("--lambda", mc_lambda, "collapse rate [1/s]");
    mc_cmd->add_option("--rc", mc_rc, "correlation length");
    mc_cmd->add_option("--extent", mc_extent_rc, "probe grid extent in units of 1/rc");
    mc_cmd->add_option("--probe-points", mc_probe_points, "probe points per axis (odd)");
    mc_cmd->add_option("--steps", mc_steps, "time steps");
    mc_cmd->add_option("--trajectories", mc_traj, "trajectory count");
    mc_cmd->add_option("--checkpoints", mc_checkpoints, "energy checkpoints for the fit");

    // ---- cumulant ----
    auto* cum_cmd = app.add_subcommand("cumulant", "trajectories vs second-cumulant master equation");
    std::string cum_file;
    cum_cmd->add_option("system", cum_file, "system spec file")->required();

    // ---- convert-sde ----
    auto* sde_cmd = app.add_subcommand("convert-sde", "Stratonovich <-> Ito drift conversion");
    std::string sde_in, sde_out, sde_dir = "strat-to-ito";
    sde_cmd->add_option("input", sde_in, "sde matrix file")->required();
    sde_cmd->add_option("--direction", sde_dir, "strat-to-ito | ito-to-strat")
        ->check(CLI::IsMember({"strat-to-ito", "ito-to-strat"}));
    sde_cmd->add_option("--out", sde_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (rate_cmd->parsed()) {
        const Material mat = rate_mat.resolve();
        const CslParams p{rate_lambda, parse_length(rate_rc)};
        const SpectrumSpec spec = SpectrumSpec::parse(rate_spectrum);
        HeatingRate r;
        if (spec.kind == SpectrumKind::Flat && !rate_strict_debye) {
            r = rate_white(p, mat);
        } else {
            NonWhiteOptions opt;
            opt.rel_tol = rate_tol;
            opt.truncate_at_debye = rate_strict_debye;
            r = rate_nonwhite(spec.make(p), mat, opt);
        }
        if (g.format == "json") {
            nlohmann::ordered_json j;
            j["q_dot"] = sci(r.q_dot);
            j["method"] = to_string(r.method);
            j["error_estimate"] = sci(r.error_estimate);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "q_dot,method,error_estimate\n"
                      << sci(r.q_dot) << "," << to_string(r.method) << ","
                      << sci(r.error_estimate) << "\n";
        }
        return exit_ok;
    }

    if (prof_cmd->parsed()) {
        const Material mat = prof_mat.resolve();
        double q_dot;
        if (prof_qdot && prof_from_rate)
            throw usage_error("profile: give either --qdot or --from-rate, not both");
        if (prof_qdot) {
            q_dot = *prof_qdot;
        } else if (prof_from_rate) {
            const CslParams p{prof_lambda, parse_length(prof_rc)};
            const SpectrumSpec spec = SpectrumSpec::parse(prof_spectrum);
            q_dot = spec.kind == SpectrumKind::Flat
                        ? rate_white(p, mat).q_dot
                        : rate_nonwhite(spec.make(p), mat, 1e-8).q_dot;
        } else {
            throw usage_error("profile: need --qdot or --from-rate");
        }
        const auto prof = profile(parse_temperature(prof_ts), q_dot, mat.k0,
                                  parse_geometry(prof_geometry), prof_samples);
        std::cout << profile_to_csv(prof);
        return exit_ok;
    }

    if (scen_cmd->parsed()) {
        Scenario s = !g.config.empty() ? scenario_from_config_file(g.config)
                                       : builtin_scenario(scen_name.empty() ? "cu-cuore"
                                                                            : scen_name);
        if (!scen_name.empty() && !g.config.empty())
            throw usage_error("scenario: give either a builtin name or --config, not both");
        s.output_dir = g.output;
        s.seed = g.seed;
        emit_report(run_scenario(s), g);
        return exit_ok;
    }

    if (sweep_cmd->parsed()) {
        Scenario s = !g.config.empty() ? scenario_from_config_file(g.config)
                                       : builtin_scenario(sweep_name.empty() ? "cu-cuore"
                                                                             : sweep_name);
        s.seed = g.seed;
        const auto rows = sweep(s, sweep_param, sweep_values);
        std::cout << sweep_to_csv(rows);
        return exit_ok;
    }

    if (mc_cmd->parsed()) {
        Material mat = mc_mat.resolve();
        const double rc = parse_length(mc_rc);
        MaterialOverrides ov;
        ov.lattice_param = parse_length(mc_toy_lattice);
        mat = apply_overrides(mat, ov);

        McConfig cfg;
        cfg.grid = build_grid(mc_cells, mat);
        cfg.probe_extent = mc_extent_rc / rc;
        cfg.probe_points_per_axis = mc_probe_points;
        double w_max = 0.0;
        for (const auto& m : cfg.grid.modes) w_max = std::max(w_max, m.omega);
        cfg.dt = mc_dt_factor / w_max;
        cfg.steps = mc_steps;
        cfg.trajectories = mc_traj;
        cfg.checkpoints = mc_checkpoints;
        cfg.seed = g.seed;

        const CslParams p{mc_lambda, rc};
        const McResult res = mc_energy_growth(cfg, p);

        std::cout << "t,mean_energy,stderr\n";
        for (std::size_t i = 0; i < res.times.size(); ++i)
            std::cout << sci(res.times[i]) << "," << sci(res.mean_energy[i]) << ","
                      << sci(res.stderr_energy[i]) << "\n";
        std::cerr << "slope = " << sci(res.slope) << " W, stderr = " << sci(res.slope_se)
                  << " W, discrete_oracle = " << sci(res.discrete_oracle) << " W\n";
        if (!res.linear_model_ok)
            std::cerr << "warning: mean curve deviates from a line through the origin "
                      << "(chi2 " << sci(res.chi2) << " > " << sci(res.chi2_threshold_95)
                      << ")\n";
        return exit_ok;
    }

    if (cum_cmd->parsed()) {
        const CumulantJob job = load_cumulant_job(cum_file);
        std::vector<double> times;
        for (int i = 1; i <= job.samples; ++i)
            times.push_back(job.t_end * i / job.samples);
        const auto me = evolve_master_second_cumulant_sampled(
            job.system, job.psi0 * job.psi0.adjoint(), times, job.dt);
        const auto traj = evolve_trajectories_sampled(job.system, job.psi0, times, job.dt,
                                                      job.trajectories, g.seed);
        std::cout << "t,trace_distance\n";
        for (std::size_t i = 0; i < times.size(); ++i)
            std::cout << sci(times[i]) << ","
                      << sci(trace_distance(traj.mean_rho[i], me[i])) << "\n";
        return exit_ok;
    }

    if (sde_cmd->parsed()) {
        std::ifstream in(sde_in);
        if (!in) throw usage_error("cannot open sde file '" + sde_in + "'");
        const LinearSde sde = read_linear_sde(in);
        const LinearSde converted =
            sde_dir == "strat-to-ito" ? strat_to_ito(sde) : ito_to_strat(sde);
        if (sde_out.empty()) {
            write_linear_sde(std::cout, converted);
        } else {
            std::ofstream out(sde_out);
            if (!out) throw usage_error("cannot write sde file '" + sde_out + "'");
            write_linear_sde(out, converted);
        }
        return exit_ok;
    }

    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const cslheat::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const cslheat::not_found_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const cslheat::numeric_error& e) {
        std::cerr << "numeric error: " << e.what()
                  << " (best estimate " << e.best_estimate() << ")\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
}

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

#include "cslheat/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cslheat/config.hpp"
#include "cslheat/constants.hpp"
#include "cslheat/errors.hpp"

namespace cslheat {

SpectrumSpec SpectrumSpec::parse(const std::string& text) {
    const std::string t = trim(text);
    SpectrumSpec spec;
    if (t == "flat") {
        spec.kind = SpectrumKind::Flat;
        return spec;
    }
    if (t.rfind("step:", 0) == 0) {
        spec.kind = SpectrumKind::StepCutoff;
        spec.cutoff = parse_double(t.substr(5), "spectrum cutoff");
        return spec;
    }
    if (t.rfind("file:", 0) == 0) {
        spec.kind = SpectrumKind::Tabulated;
        spec.table_path = trim(t.substr(5));
        if (spec.table_path.empty()) throw usage_error("spectrum file path is empty");
        return spec;
    }
    throw usage_error("bad spectrum '" + t + "' (expected flat | step:OMEGA | file:PATH)");
}

NoiseSpectrum SpectrumSpec::make(const CslParams& p) const {
    switch (kind) {
    case SpectrumKind::Flat: return NoiseSpectrum::flat(p);
    case SpectrumKind::StepCutoff: return NoiseSpectrum::step_cutoff(p, cutoff);
    case SpectrumKind::Tabulated: return load_tabulated_spectrum(table_path, p);
    }
    throw usage_error("bad spectrum kind");
}

std::string SpectrumSpec::describe() const {
    switch (kind) {
    case SpectrumKind::Flat: return "flat";
    case SpectrumKind::StepCutoff: return "step:" + sci(cutoff);
    case SpectrumKind::Tabulated: return "file:" + table_path;
    }
    return "?";
}

Geometry parse_geometry(const std::string& text) {
    const std::string t = trim(text);
    const auto colon = t.find(':');
    if (colon == std::string::npos)
        throw usage_error("bad geometry '" + t + "' (expected sphere:R | slab:L | cylinder:R)");
    const std::string kind = t.substr(0, colon);
    const double length = parse_length(t.substr(colon + 1));
    if (kind == "sphere") return Geometry::sphere(length);
    if (kind == "cylinder") return Geometry::cylinder(length);
    if (kind == "slab") return Geometry::slab(length);
    throw usage_error("bad geometry kind '" + kind + "'");
}

std::string describe_geometry(const Geometry& g) {
    const char* kind = g.kind == GeometryKind::Sphere ? "sphere"
                     : g.kind == GeometryKind::Cylinder ? "cylinder" : "slab";
    return std::string(kind) + ":" + sci(g.length);
}

std::string profile_to_csv(const TemperatureProfile& p) {
    std::ostringstream os;
    os << "r,T_exact,T_linearized\n";
    for (const auto& s : p.samples)
        os << sci(s.r) << "," << sci(s.t_exact) << "," << sci(s.t_linearized) << "\n";
    return os.str();
}

namespace {

HeatingRate scenario_rate(const Scenario& s) {
    if (s.spectrum.kind == SpectrumKind::Flat) return rate_white(s.csl, s.material);
    return rate_nonwhite(s.spectrum.make(s.csl), s.material, s.rate_tol);
}

} // namespace

RunReport run_scenario(const Scenario& s) {
    s.material.validate();
    s.csl.validate();
    s.geometry.validate();
    if (!(s.t_surface > 0.0)) throw usage_error("scenario: surface temperature must be > 0");

    RunReport rep;
    rep.version = version_string;
    rep.seed = s.seed;
    rep.inputs.emplace_back("scenario", s.name);
    rep.inputs.emplace_back("material", s.material.name);
    rep.inputs.emplace_back("density", sci(s.material.density));
    rep.inputs.emplace_back("v_eff", sci(s.material.v_eff));
    rep.inputs.emplace_back("k0", sci(s.material.k0));
    rep.inputs.emplace_back("lattice_param", sci(s.material.lattice_param));
    for (const auto& f : s.material.default_filled_fields)
        rep.inputs.emplace_back("default_applied", f);
    rep.inputs.emplace_back("lambda", sci(s.csl.lambda));
    rep.inputs.emplace_back("rc", sci(s.csl.r_c));
    rep.inputs.emplace_back("spectrum", s.spectrum.describe());
    rep.inputs.emplace_back("geometry", describe_geometry(s.geometry));
    rep.inputs.emplace_back("ts", sci(s.t_surface));
    rep.inputs.emplace_back("seed", std::to_string(s.seed));

    rep.rate = scenario_rate(s);

    const auto [exact, lin] =
        core_temperature_delta(s.t_surface, rep.rate.q_dot, s.material.k0, s.geometry);
    rep.core_delta_exact = exact;
    rep.core_delta_linearized = lin;
    rep.core_temperature_exact = s.t_surface + exact;
    rep.core_temperature_linearized = s.t_surface + lin;

    if (s.output_dir != "-") {
        const auto prof = profile(s.t_surface, rep.rate.q_dot, s.material.k0, s.geometry,
                                  s.profile_samples);
        std::filesystem::path dir = s.output_dir.empty() ? "." : s.output_dir;
        std::filesystem::create_directories(dir);
        const auto path = dir / (s.name.empty() ? std::string("scenario_profile.csv")
                                                : s.name + "_profile.csv");
        std::ofstream out(path);
        if (!out) throw usage_error("cannot write profile to '" + path.string() + "'");
        out << profile_to_csv(prof);
        rep.profile_path = path.string();
    }
    return rep;
}

std::vector<RunReport> sweep(const Scenario& s, const std::string& param,
                             const std::vector<double>& values) {
    if (values.empty()) throw usage_error("sweep: need at least one value");
    if (param != "lambda" && param != "rc" && param != "cutoff")
        throw usage_error("sweep: parameter must be lambda | rc | cutoff");
    if (param == "cutoff" && s.spectrum.kind != SpectrumKind::StepCutoff)
        throw usage_error("sweep over cutoff requires a step spectrum");

    std::vector<RunReport> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        Scenario row = s;
        row.output_dir = "-"; // sweeps emit the table, not per-row profile files
        if (param == "lambda") row.csl.lambda = values[i];
        else if (param == "rc") row.csl.r_c = values[i];
        else row.spectrum.cutoff = values[i];
        const std::string where = "sweep row " + std::to_string(i) + " (value " + sci(values[i]) + "): ";
        try {
            rows.push_back(run_scenario(row));
        } catch (const numeric_error& e) {
            throw numeric_error(where + e.what(), e.best_estimate());
        } catch (const std::exception& e) {
            throw usage_error(where + e.what());
        }
        rows.back().inputs.emplace_back("sweep_param", param);
        rows.back().inputs.emplace_back("sweep_value", sci(values[i]));
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<RunReport>& rows) {
    std::ostringstream os;
    os << "param,value,q_dot,method,error_estimate,core_delta_exact,core_delta_linearized\n";
    for (const auto& r : rows) {
        std::string param, value;
        for (const auto& [k, v] : r.inputs) {
            if (k == "sweep_param") param = v;
            if (k == "sweep_value") value = v;
        }
        os << param << "," << value << "," << sci(r.rate.q_dot) << "," << to_string(r.rate.method)
           << "," << sci(r.rate.error_estimate) << "," << sci(r.core_delta_exact) << ","
           << sci(r.core_delta_linearized) << "\n";
    }
    return os.str();
}

std::string RunReport::to_csv() const {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : inputs) os << k << "," << v << "\n";
    os << "q_dot," << sci(rate.q_dot) << "\n";
    os << "power_per_mass," << sci(rate.power_per_mass) << "\n";
    os << "method," << to_string(rate.method) << "\n";
    os << "error_estimate," << sci(rate.error_estimate) << "\n";
    os << "core_delta_exact," << sci(core_delta_exact) << "\n";
    os << "core_delta_linearized," << sci(core_delta_linearized) << "\n";
    os << "core_temperature_exact," << sci(core_temperature_exact) << "\n";
    os << "core_temperature_linearized," << sci(core_temperature_linearized) << "\n";
    if (!profile_path.empty()) os << "profile_path," << profile_path << "\n";
    os << "version," << version << "\n";
    return os.str();
}

std::string RunReport::to_json() const {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : inputs) {
        if (j.contains(k)) { // repeated echo keys (default_applied) become arrays
            if (!j[k].is_array()) j[k] = nlohmann::ordered_json::array({j[k]});
            j[k].push_back(v);
        } else {
            j[k] = v;
        }
    }
    j["q_dot"] = sci(rate.q_dot);
    j["power_per_mass"] = sci(rate.power_per_mass);
    j["method"] = to_string(rate.method);
    j["error_estimate"] = sci(rate.error_estimate);
    j["core_delta_exact"] = sci(core_delta_exact);
    j["core_delta_linearized"] = sci(core_delta_linearized);
    j["core_temperature_exact"] = sci(core_temperature_exact);
    j["core_temperature_linearized"] = sci(core_temperature_linearized);
    if (!profile_path.empty()) j["profile_path"] = profile_path;
    j["version"] = version;
    return j.dump(2);
}

Scenario builtin_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "cu-cuore") {
        s.material = builtin_material("Cu");
        s.csl = CslParams{1e-8, 1e-7};
        s.spectrum.kind = SpectrumKind::Flat;
        s.geometry = Geometry::sphere(0.05);
        s.t_surface = 0.03;
        return s;
    }
    if (name == "teo2-cuore") {
        s.material = builtin_material("TeO2");
        s.csl = CslParams{1e-8, 1e-7};
        s.spectrum.kind = SpectrumKind::Flat;
        s.geometry = Geometry::sphere(0.031);
        s.t_surface = 0.01;
        return s;
    }
    throw not_found_error("unknown scenario '" + name + "' (built-ins: cu-cuore, teo2-cuore)");
}

Scenario scenario_from_config_file(const std::string& path) {
    const auto sections = parse_config_file(path);
    const ConfigSection* sec = nullptr;
    for (const auto& s : sections)
        if (s.name == "scenario") sec = &s;
    if (!sec) throw usage_error("config '" + path + "': missing [scenario] section");
    for (const auto& s : sections)
        if (s.name != "scenario")
            throw usage_error("config '" + path + "': unknown section [" + s.name + "]");

    SectionReader r(*sec);
    Scenario s;
    if (auto base = r.get("builtin")) s = builtin_scenario(*base);
    if (auto name = r.get("name")) s.name = *name;

    const auto mat = r.get("material");
    const auto db = r.get("material_db");
    if (mat) {
        s.material = db ? load_material(*db, *mat) : builtin_material(*mat);
    } else {
        if (db) throw usage_error("config: material_db given without material");
        if (s.material.name.empty())
            throw usage_error("config: material is required unless builtin is set");
    }
    MaterialOverrides ov;
    ov.density = r.get_double("density");
    ov.k0 = r.get_double("k0");
    ov.v_eff = r.get_double("veff");
    if (auto lp = r.get("lattice_param")) ov.lattice_param = parse_length(*lp);
    s.material = apply_overrides(s.material, ov);

    if (auto v = r.get_double("lambda")) s.csl.lambda = *v;
    if (auto v = r.get("rc")) s.csl.r_c = parse_length(*v);
    if (auto v = r.get("spectrum")) s.spectrum = SpectrumSpec::parse(*v);
    if (auto v = r.get("geometry")) s.geometry = parse_geometry(*v);
    if (auto v = r.get("ts")) s.t_surface = parse_temperature(*v);
    if (auto v = r.get_double("tol")) s.rate_tol = *v;
    if (auto v = r.get_double("profile_samples")) s.profile_samples = static_cast<int>(*v);
    if (auto v = r.get("output")) s.output_dir = *v;
    if (auto v = r.get_double("seed")) s.seed = static_cast<std::uint64_t>(*v);
    r.finish();

    s.csl.validate();
    s.geometry.validate();
    if (!(s.t_surface > 0.0)) throw usage_error("config: ts must be > 0");
    return s;
}

} // namespace cslheat

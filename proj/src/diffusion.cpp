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

#include "cslheat/diffusion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cslheat/errors.hpp"

namespace cslheat {

Geometry Geometry::sphere(double r0) { return Geometry{GeometryKind::Sphere, r0}; }
Geometry Geometry::cylinder(double r0) { return Geometry{GeometryKind::Cylinder, r0}; }
Geometry Geometry::slab(double half_width) { return Geometry{GeometryKind::Slab, half_width}; }

void Geometry::validate() const {
    if (!(length > 0.0)) throw std::invalid_argument("geometry characteristic length must be > 0");
}

double shape_factor(GeometryKind kind) {
    switch (kind) {
    case GeometryKind::Sphere: return 1.0 / 6.0;
    case GeometryKind::Cylinder: return 1.0 / 4.0;
    case GeometryKind::Slab: return 1.0 / 2.0;
    }
    return 0.0;
}

namespace {

void check_inputs(double t_surface, double q_dot, double k0, const Geometry& g) {
    g.validate();
    if (!(t_surface > 0.0)) throw std::invalid_argument("surface temperature must be > 0");
    if (!(q_dot >= 0.0)) throw std::invalid_argument("q_dot must be >= 0");
    if (!(k0 > 0.0)) throw std::invalid_argument("k0 must be > 0");
}

double exact_temperature(double ts, double q_dot, double k0, double sf, double x) {
    const double u = ts * ts + 2.0 * sf * (q_dot / k0) * (1.0 - x * x);
    return std::sqrt(u);
}

double linearized_temperature(double ts, double q_dot, double k0, double sf, double x) {
    return ts + sf * q_dot / (k0 * ts) * (1.0 - x * x);
}

} // namespace

std::pair<double, double> core_temperature_delta(double t_surface, double q_dot, double k0,
                                                 const Geometry& geometry) {
    check_inputs(t_surface, q_dot, k0, geometry);
    // linearized deltas are literal multiples of the sphere value, so the
    // cross-geometry ratios 1 : 1.5 : 3 are exact in floating point
    const double sphere_lin = q_dot / (6.0 * k0 * t_surface);
    const double lin = geometry.kind == GeometryKind::Sphere     ? sphere_lin
                       : geometry.kind == GeometryKind::Cylinder ? 1.5 * sphere_lin
                                                                 : 3.0 * sphere_lin;
    const double sf = shape_factor(geometry.kind);
    const double exact = exact_temperature(t_surface, q_dot, k0, sf, 0.0) - t_surface;
    return {exact, lin};
}

TemperatureProfile profile(double t_surface, double q_dot, double k0,
                           const Geometry& geometry, int n_samples) {
    check_inputs(t_surface, q_dot, k0, geometry);
    if (n_samples < 2) throw std::invalid_argument("profile needs >= 2 samples");

    TemperatureProfile out;
    out.geometry = geometry;
    out.t_surface = t_surface;
    out.q_dot = q_dot;
    out.k0 = k0;

    const double sf = shape_factor(geometry.kind);
    out.samples.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double x = static_cast<double>(i) / (n_samples - 1);
        ProfileSample s;
        s.r = x * geometry.length;
        s.t_exact = exact_temperature(t_surface, q_dot, k0, sf, x);
        s.t_linearized = linearized_temperature(t_surface, q_dot, k0, sf, x);
        out.samples.push_back(s);
    }
    auto [exact, lin] = core_temperature_delta(t_surface, q_dot, k0, geometry);
    out.core_delta_exact = exact;
    out.core_delta_linearized = lin;
    return out;
}

TemperatureProfile profile_sphere(double t_surface, double q_dot, double k0,
                                  double r0, int n_samples) {
    return profile(t_surface, q_dot, k0, Geometry::sphere(r0), n_samples);
}

TemperatureProfile solve_bvp_oracle(double t_surface, double q_dot, double k0,
                                    const Geometry& geometry, int mesh) {
    check_inputs(t_surface, q_dot, k0, geometry);
    if (mesh < 64) throw std::invalid_argument("bvp oracle needs mesh >= 64");

    const int p = geometry.kind == GeometryKind::Sphere ? 2
                : geometry.kind == GeometryKind::Cylinder ? 1 : 0;
    const int M = mesh;
    const double h = 1.0 / M;
    // scaled variables: th = T/Ts on x in [0,1], load qs = q/(k0 Ts^2)
    const double qs = q_dot / (k0 * t_surface * t_surface);

    // node values th[0..M], th[M] = 1 fixed; control-volume residual
    //   F_i = (xr^p G_r - xl^p G_l)/h + qs * avg(x^p over cell) = 0
    // with the face flux G = sqrt(th_i th_{i+1}) (th_{i+1} - th_i)/h
    // (geometric-mean conductivity at the interface; second order).
    // Face at x = 0 carries zero flux (symmetry), which regularizes the
    // coordinate singularity without one-sided stencils.
    std::vector<double> th(static_cast<std::size_t>(M) + 1);
    const double sf = shape_factor(geometry.kind);
    for (int i = 0; i <= M; ++i) { // linearized profile as the initial guess
        const double x = i * h;
        th[static_cast<std::size_t>(i)] =
            linearized_temperature(1.0, qs, 1.0, sf, x);
    }
    th[static_cast<std::size_t>(M)] = 1.0;

    auto face_x = [h](int i) { return (i + 0.5) * h; }; // face between nodes i and i+1
    auto pow_p = [p](double x) {
        return p == 0 ? 1.0 : (p == 1 ? x : x * x);
    };
    // integral of x^p over the control cell around node i, divided by h
    auto cell_weight = [&](int i) {
        const double xl = i == 0 ? 0.0 : face_x(i - 1);
        const double xr = face_x(i);
        return (std::pow(xr, p + 1) - std::pow(xl, p + 1)) / ((p + 1) * h);
    };

    std::vector<double> F(static_cast<std::size_t>(M));
    std::vector<double> dl(static_cast<std::size_t>(M)), dd(static_cast<std::size_t>(M)),
        du(static_cast<std::size_t>(M));

    auto face_flux = [h](double t_a, double t_b) {
        return std::sqrt(t_a * t_b) * (t_b - t_a) / h;
    };
    auto residual = [&](const std::vector<double>& t, std::vector<double>& out) {
        double norm = 0.0;
        for (int i = 0; i < M; ++i) {
            const double t_i = t[static_cast<std::size_t>(i)];
            const double t_r = t[static_cast<std::size_t>(i) + 1];
            const double g_r = pow_p(face_x(i)) * face_flux(t_i, t_r);
            double g_l = 0.0;
            if (i > 0) {
                const double t_l = t[static_cast<std::size_t>(i) - 1];
                g_l = pow_p(face_x(i - 1)) * face_flux(t_l, t_i);
            }
            out[static_cast<std::size_t>(i)] = (g_r - g_l) / h + qs * cell_weight(i);
            norm = std::max(norm, std::abs(out[static_cast<std::size_t>(i)]));
        }
        return norm;
    };

    // convergence on the per-cell flux-imbalance defect h^2 max|F| (the
    // discrete conservation defect in T^2 units); its rounding floor is
    // eps * |T|^2 independent of mesh, so 1e-12 is reachable everywhere
    const double tol = 1e-12 * (1.0 + qs);
    auto scaled = [h](double f) { return h * h * f; };
    double fnorm = residual(th, F);
    int iter = 0;
    const int max_iter = 60;
    while (scaled(fnorm) > tol && iter < max_iter) {
        // tridiagonal Jacobian of F w.r.t. th[0..M-1]
        // G(a,b) = sqrt(ab)(b-a)/h:
        //   dG/da = ((b-a) b/(2 sqrt(ab)) - sqrt(ab))/h
        //   dG/db = ((b-a) a/(2 sqrt(ab)) + sqrt(ab))/h
        auto dflux_da = [h](double a, double b) {
            const double s = std::sqrt(a * b);
            return ((b - a) * b / (2.0 * s) - s) / h;
        };
        auto dflux_db = [h](double a, double b) {
            const double s = std::sqrt(a * b);
            return ((b - a) * a / (2.0 * s) + s) / h;
        };
        for (int i = 0; i < M; ++i) {
            const std::size_t si = static_cast<std::size_t>(i);
            const double t_i = th[si];
            const double t_r = th[si + 1];
            const double xr_p = pow_p(face_x(i));
            dd[si] = xr_p * dflux_da(t_i, t_r) / h;
            du[si] = (i + 1 < M) ? xr_p * dflux_db(t_i, t_r) / h : 0.0;
            if (i > 0) {
                const double t_l = th[si - 1];
                const double xl_p = pow_p(face_x(i - 1));
                dl[si] = -xl_p * dflux_da(t_l, t_i) / h;
                dd[si] -= xl_p * dflux_db(t_l, t_i) / h;
            } else {
                dl[si] = 0.0;
            }
        }
        // Thomas solve J * delta = -F
        std::vector<double> c(static_cast<std::size_t>(M)), dvec(static_cast<std::size_t>(M));
        double beta = dd[0];
        if (beta == 0.0) throw numeric_error("bvp oracle: singular Jacobian", t_surface);
        c[0] = du[0] / beta;
        dvec[0] = -F[0] / beta;
        for (int i = 1; i < M; ++i) {
            const std::size_t si = static_cast<std::size_t>(i);
            beta = dd[si] - dl[si] * c[si - 1];
            if (beta == 0.0) throw numeric_error("bvp oracle: singular Jacobian", t_surface);
            c[si] = du[si] / beta;
            dvec[si] = (-F[si] - dl[si] * dvec[si - 1]) / beta;
        }
        std::vector<double> delta(static_cast<std::size_t>(M));
        delta[static_cast<std::size_t>(M) - 1] = dvec[static_cast<std::size_t>(M) - 1];
        for (int i = M - 2; i >= 0; --i)
            delta[static_cast<std::size_t>(i)] =
                dvec[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)] * delta[static_cast<std::size_t>(i) + 1];

        // damped update: backtrack until the residual decreases and T stays positive
        double step = 1.0;
        bool accepted = false;
        std::vector<double> trial(th);
        std::vector<double> Ftrial(static_cast<std::size_t>(M));
        for (int bt = 0; bt < 30; ++bt) {
            bool positive = true;
            for (int i = 0; i < M; ++i) {
                trial[static_cast<std::size_t>(i)] =
                    th[static_cast<std::size_t>(i)] + step * delta[static_cast<std::size_t>(i)];
                if (!(trial[static_cast<std::size_t>(i)] > 0.0)) positive = false;
            }
            if (positive) {
                const double fn = residual(trial, Ftrial);
                if (fn < fnorm || scaled(fn) <= tol) {
                    th.swap(trial);
                    F.swap(Ftrial);
                    fnorm = fn;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted)
            throw numeric_error("bvp oracle: Newton stalled at scaled residual " +
                                    std::to_string(scaled(fnorm)),
                                th[0] * t_surface - t_surface);
        ++iter;
    }
    if (scaled(fnorm) > tol)
        throw numeric_error("bvp oracle: Newton did not converge in " + std::to_string(max_iter) +
                                " iterations (scaled residual " + std::to_string(scaled(fnorm)) +
                                ")",
                            th[0] * t_surface - t_surface);

    TemperatureProfile out;
    out.geometry = geometry;
    out.t_surface = t_surface;
    out.q_dot = q_dot;
    out.k0 = k0;
    const double sf2 = shape_factor(geometry.kind);
    out.samples.reserve(static_cast<std::size_t>(M) + 1);
    for (int i = 0; i <= M; ++i) {
        const double x = i * h;
        ProfileSample s;
        s.r = x * geometry.length;
        s.t_exact = th[static_cast<std::size_t>(i)] * t_surface;
        s.t_linearized = linearized_temperature(t_surface, q_dot, k0, sf2, x);
        out.samples.push_back(s);
    }
    out.core_delta_exact = out.samples.front().t_exact - t_surface;
    out.core_delta_linearized = sf2 * q_dot / (k0 * t_surface);
    return out;
}

} // namespace cslheat

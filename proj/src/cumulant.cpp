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

#include "cslheat/cumulant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cslheat/config.hpp"
#include "cslheat/constants.hpp"
#include "cslheat/errors.hpp"
#include "cslheat/rng.hpp"

namespace cslheat {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

const std::complex<double> imag_unit(0.0, 1.0);

bool is_hermitian(const MatrixXcd& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

MatrixXcd commutator(const MatrixXcd& a, const MatrixXcd& b) { return a * b - b * a; }

// Hermitian eigensystem of H0 used to evaluate L in the interaction
// picture at arbitrary delay.
struct Propagator {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es;
    MatrixXcd l_eig; // L in the H0 eigenbasis

    Propagator(const MatrixXcd& h0, const MatrixXcd& l) : es(h0) {
        if (es.info() != Eigen::Success)
            throw numeric_error("H0 eigendecomposition failed", 0.0);
        l_eig = es.eigenvectors().adjoint() * l * es.eigenvectors();
    }

    // exp(-i H0 tau/hbar) L exp(+i H0 tau/hbar)
    MatrixXcd rotated_l(double tau) const {
        const VectorXd& w = es.eigenvalues();
        const int n = static_cast<int>(w.size());
        MatrixXcd m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const double phase = -(w[r] - w[c]) * tau / constants.hbar;
                m(r, c) = l_eig(r, c) * std::exp(imag_unit * phase);
            }
        return es.eigenvectors() * m * es.eigenvectors().adjoint();
    }
};

} // namespace

double NoiseModel::correlation(double t) const {
    validate();
    if (kind == Kind::White)
        throw unsupported_error("white correlation is a delta; handled analytically");
    return gamma_eff / (2.0 * tau_c) * std::exp(-std::abs(t) / tau_c);
}

void NoiseModel::validate() const {
    if (!(gamma_eff >= 0.0)) throw std::invalid_argument("gamma_eff must be >= 0");
    if (kind == Kind::Exponential && !(tau_c > 0.0))
        throw std::invalid_argument("exponential noise needs tau_c > 0");
}

void SmallSystem::validate() const {
    const int d = dim();
    if (d < 2 || d > 16) throw std::invalid_argument("small system dimension must be in [2, 16]");
    if (h0.cols() != d || l_op.rows() != d || l_op.cols() != d)
        throw std::invalid_argument("small system: H0 and L must be d x d");
    if (!is_hermitian(h0, 1e-12)) throw std::invalid_argument("H0 must be Hermitian to 1e-12");
    noise.validate();
}

std::vector<MatrixXcd> evolve_master_second_cumulant_sampled(
    const SmallSystem& sys, const MatrixXcd& rho0, const std::vector<double>& sample_times,
    double dt) {
    sys.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (sample_times.empty()) throw std::invalid_argument("need at least one sample time");
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (!(sample_times[i] >= 0.0)) throw std::invalid_argument("sample times must be >= 0");
        if (i > 0 && !(sample_times[i] > sample_times[i - 1]))
            throw std::invalid_argument("sample times must be increasing");
    }
    if (rho0.rows() != sys.dim() || rho0.cols() != sys.dim())
        throw std::invalid_argument("rho0 dimension mismatch");
    if (!is_hermitian(rho0, 1e-10)) throw std::invalid_argument("rho0 must be Hermitian");
    if (std::abs(rho0.trace().real() - 1.0) > 1e-10 || std::abs(rho0.trace().imag()) > 1e-10)
        throw std::invalid_argument("rho0 must have unit trace");
    {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho0);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument("rho0 must be positive semidefinite to 1e-10");
    }

    const bool white = sys.noise.kind == NoiseModel::Kind::White;
    const MatrixXcd& L = sys.l_op;
    Propagator prop(sys.h0, L);

    // Memory kernel accumulator K(t); white noise closes it to gamma/2 L.
    // The exponential kernel is integrated on the step grid by trapezoid
    // and truncated at 8 tau_c, beyond which it has saturated
    // (relative tail below e^-8).
    MatrixXcd K = MatrixXcd::Zero(sys.dim(), sys.dim());
    if (white) K = 0.5 * sys.noise.gamma_eff * L;
    const double window = white ? 0.0 : 8.0 * sys.noise.tau_c;

    auto generator = [&](const MatrixXcd& rho, const MatrixXcd& kernel) -> MatrixXcd {
        MatrixXcd drho = -imag_unit / constants.hbar * commutator(sys.h0, rho);
        drho -= commutator(L, commutator(kernel, rho));
        return drho;
    };

    std::vector<MatrixXcd> out;
    out.reserve(sample_times.size());
    MatrixXcd rho = rho0;
    double t = 0.0;
    std::size_t next_sample = 0;
    const double t_end = sample_times.back();

    auto maybe_sample = [&]() {
        while (next_sample < sample_times.size() && t >= sample_times[next_sample] - 0.5 * dt) {
            out.push_back(rho);
            ++next_sample;
        }
    };
    maybe_sample();

    const long total_steps = std::lround(std::ceil(t_end / dt - 1e-9));
    for (long n = 0; n < total_steps && next_sample < sample_times.size(); ++n) {
        MatrixXcd K_mid = K, K_next = K;
        if (!white && t < window) {
            // trapezoid increments of f(tau) L~(-tau) at tau = t .. t+dt
            const MatrixXcd f0 = sys.noise.correlation(t) * prop.rotated_l(-t);
            const MatrixXcd fh =
                sys.noise.correlation(t + 0.5 * dt) * prop.rotated_l(-(t + 0.5 * dt));
            const MatrixXcd f1 = sys.noise.correlation(t + dt) * prop.rotated_l(-(t + dt));
            K_mid = K + 0.25 * dt * (f0 + fh);
            K_next = K + 0.25 * dt * (f0 + 2.0 * fh + f1);
        }

        const MatrixXcd k1 = generator(rho, K);
        const MatrixXcd k2 = generator(rho + 0.5 * dt * k1, K_mid);
        const MatrixXcd k3 = generator(rho + 0.5 * dt * k2, K_mid);
        const MatrixXcd k4 = generator(rho + dt * k3, K_next);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint().eval()); // exact Hermiticity
        K = K_next;
        t += dt;

        const double trace_err = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
        if (trace_err > 1e-8)
            throw numeric_error("master equation trace drift " + std::to_string(trace_err),
                                trace_err);
        maybe_sample();
    }
    if (out.size() != sample_times.size())
        throw numeric_error("master equation sampling incomplete", static_cast<double>(out.size()));
    return out;
}

MatrixXcd evolve_master_second_cumulant(const SmallSystem& sys, const MatrixXcd& rho0,
                                        double t, double dt) {
    if (t == 0.0) return rho0;
    return evolve_master_second_cumulant_sampled(sys, rho0, {t}, dt).back();
}

TrajectoryEnsemble evolve_trajectories_sampled(const SmallSystem& sys, const VectorXcd& psi0,
                                               const std::vector<double>& sample_times,
                                               double dt, int n_traj, std::uint64_t seed,
                                               bool keep_states) {
    sys.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (n_traj < 1) throw std::invalid_argument("need n_traj >= 1");
    if (psi0.size() != sys.dim()) throw std::invalid_argument("psi0 dimension mismatch");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("psi0 must be normalized");
    if (!is_hermitian(sys.l_op, 1e-12))
        throw std::invalid_argument("trajectory evolution requires Hermitian L");
    if (sample_times.empty()) throw std::invalid_argument("need at least one sample time");
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (!(sample_times[i] > 0.0)) throw std::invalid_argument("sample times must be > 0");
        if (i > 0 && !(sample_times[i] > sample_times[i - 1]))
            throw std::invalid_argument("sample times must be increasing");
    }

    const int d = sys.dim();
    const bool white = sys.noise.kind == NoiseModel::Kind::White;
    const double t_end = sample_times.back();
    const long steps = std::lround(std::ceil(t_end / dt - 1e-9));

    // map sample times onto step indices (nearest step boundary)
    std::vector<long> sample_steps;
    for (double ts : sample_times)
        sample_steps.push_back(std::min(steps, std::lround(ts / dt)));

    TrajectoryEnsemble ens;
    ens.times = sample_times;
    ens.mean_rho.assign(sample_times.size(), MatrixXcd::Zero(d, d));
    if (keep_states) ens.states.assign(sample_times.size(), {});

    const MatrixXcd h0_scaled = sys.h0 / constants.hbar; // rad/s
    std::normal_distribution<double> n01(0.0, 1.0);

    for (int traj = 0; traj < n_traj; ++traj) {
        auto eng = derived_engine(seed, static_cast<std::uint64_t>(traj));
        VectorXcd psi = psi0;
        double xi_prev = 0.0;
        if (!white) {
            // stationary Ornstein-Uhlenbeck start, matching the assumed
            // stationary correlation f(t - s)
            const double sigma = std::sqrt(sys.noise.gamma_eff / (2.0 * sys.noise.tau_c));
            xi_prev = sigma * n01(eng);
        }
        std::size_t next = 0;
        for (long n = 0; n < steps; ++n) {
            // Hermitian exponent G: psi <- exp(i G) psi
            MatrixXcd G = -h0_scaled * dt;
            if (white) {
                const double dw = std::sqrt(sys.noise.gamma_eff * dt) * n01(eng);
                G += dw * sys.l_op;
            } else {
                const double decay = std::exp(-dt / sys.noise.tau_c);
                const double sigma = std::sqrt(sys.noise.gamma_eff / (2.0 * sys.noise.tau_c));
                const double xi_next =
                    xi_prev * decay + sigma * std::sqrt(1.0 - decay * decay) * n01(eng);
                G += 0.5 * (xi_prev + xi_next) * dt * sys.l_op;
                xi_prev = xi_next;
            }
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(G);
            VectorXcd phases(d);
            for (int i = 0; i < d; ++i)
                phases[i] = std::exp(imag_unit * es.eigenvalues()[i]);
            psi = es.eigenvectors() * phases.asDiagonal() *
                  (es.eigenvectors().adjoint() * psi);

            const double norm_err = std::abs(psi.norm() - 1.0);
            if (norm_err > 1e-8)
                throw numeric_error("trajectory norm drift " + std::to_string(norm_err), norm_err);

            while (next < sample_steps.size() && n + 1 == sample_steps[next]) {
                ens.mean_rho[next] += psi * psi.adjoint();
                if (keep_states) ens.states[next].push_back(psi);
                ++next;
            }
        }
    }
    for (auto& m : ens.mean_rho) m /= static_cast<double>(n_traj);
    return ens;
}

MatrixXcd evolve_trajectories(const SmallSystem& sys, const VectorXcd& psi0, double t,
                              double dt, int n_traj, std::uint64_t seed) {
    if (t == 0.0) return psi0 * psi0.adjoint();
    return evolve_trajectories_sampled(sys, psi0, {t}, dt, n_traj, seed).mean_rho.back();
}

double trace_distance(const MatrixXcd& a, const MatrixXcd& b) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a - b);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace {

std::complex<double> parse_complex(const std::string& token, const std::string& context) {
    std::string t = trim(token);
    if (t.empty()) throw usage_error(context + ": empty complex entry");
    // forms: a, bi, a+bi, a-bi (with optional leading sign on a)
    if (t.back() == 'i' || t.back() == 'j') {
        t.pop_back();
        // find the split between real and imaginary parts
        for (std::size_t p = t.size(); p-- > 1;) {
            if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
                const double re = parse_double(t.substr(0, p), context);
                const std::string im_str = t.substr(p);
                const double im = (im_str == "+" || im_str == "-")
                                      ? (im_str == "+" ? 1.0 : -1.0)
                                      : parse_double(im_str, context);
                return {re, im};
            }
        }
        if (t.empty() || t == "+") return {0.0, 1.0};
        if (t == "-") return {0.0, -1.0};
        return {0.0, parse_double(t, context)};
    }
    return {parse_double(t, context), 0.0};
}

MatrixXcd parse_complex_matrix(const std::string& text, int dim, const std::string& what) {
    MatrixXcd m(dim, dim);
    std::vector<std::string> rows;
    std::size_t start = 0;
    while (true) {
        const auto semi = text.find(';', start);
        rows.push_back(text.substr(start, semi == std::string::npos ? std::string::npos
                                                                    : semi - start));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (static_cast<int>(rows.size()) != dim)
        throw usage_error(what + ": expected " + std::to_string(dim) + " rows");
    for (int r = 0; r < dim; ++r) {
        const auto toks = split_ws(rows[static_cast<std::size_t>(r)]);
        if (static_cast<int>(toks.size()) != dim)
            throw usage_error(what + " row " + std::to_string(r + 1) + ": expected " +
                              std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c)
            m(r, c) = parse_complex(toks[static_cast<std::size_t>(c)], what);
    }
    return m;
}

NoiseModel parse_noise_model(const std::string& text) {
    NoiseModel n;
    const std::string t = trim(text);
    if (t.rfind("white:", 0) == 0) {
        n.kind = NoiseModel::Kind::White;
        n.gamma_eff = parse_double(t.substr(6), "noise gamma");
    } else if (t.rfind("exp:", 0) == 0) {
        const auto rest = t.substr(4);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw usage_error("exponential noise needs exp:GAMMA:TAU");
        n.kind = NoiseModel::Kind::Exponential;
        n.gamma_eff = parse_double(rest.substr(0, colon), "noise gamma");
        n.tau_c = parse_double(rest.substr(colon + 1), "noise tau");
    } else {
        throw usage_error("bad noise '" + t + "' (expected white:GAMMA | exp:GAMMA:TAU)");
    }
    n.validate();
    return n;
}

} // namespace

CumulantJob load_cumulant_job(const std::string& path) {
    const auto sections = parse_config_file(path);
    if (sections.size() != 1 || sections.front().name != "system")
        throw usage_error("cumulant job '" + path + "': expected a single [system] section");
    SectionReader r(sections.front());
    CumulantJob job;
    const int dim = static_cast<int>(r.require_double("dim"));
    // h0 is given in angular-frequency units (H0/hbar); stored in joules
    job.system.h0 = constants.hbar * parse_complex_matrix(r.require("h0"), dim, "h0");
    job.system.l_op = parse_complex_matrix(r.require("l"), dim, "l");
    job.system.noise = parse_noise_model(r.require("noise"));

    const auto psi_toks = split_ws(r.require("psi0"));
    if (static_cast<int>(psi_toks.size()) != dim)
        throw usage_error("psi0: expected " + std::to_string(dim) + " entries");
    job.psi0.resize(dim);
    for (int i = 0; i < dim; ++i)
        job.psi0[i] = parse_complex(psi_toks[static_cast<std::size_t>(i)], "psi0");
    const double norm = job.psi0.norm();
    if (!(norm > 0.0)) throw usage_error("psi0 must be nonzero");
    job.psi0 /= norm;

    job.t_end = r.require_double("t");
    job.dt = r.require_double("dt");
    if (auto v = r.get_double("trajectories")) job.trajectories = static_cast<int>(*v);
    if (auto v = r.get_double("samples")) job.samples = static_cast<int>(*v);
    r.finish();

    if (!(job.t_end > 0.0) || !(job.dt > 0.0))
        throw usage_error("cumulant job: t and dt must be > 0");
    if (job.samples < 1 || job.trajectories < 1)
        throw usage_error("cumulant job: samples and trajectories must be >= 1");
    job.system.validate();
    return job;
}

double bootstrap_trace_distance_se(const std::vector<VectorXcd>& states,
                                   const MatrixXcd& reference, int n_boot, std::uint64_t seed) {
    if (states.size() < 2) throw std::invalid_argument("bootstrap needs >= 2 states");
    if (n_boot < 10) throw std::invalid_argument("bootstrap needs >= 10 resamples");
    const int n = static_cast<int>(states.size());
    const int d = static_cast<int>(states.front().size());

    auto eng = derived_engine(seed, 0x626f6f74ULL);
    std::uniform_int_distribution<int> pick(0, n - 1);

    double sum = 0.0, sum2 = 0.0;
    for (int bidx = 0; bidx < n_boot; ++bidx) {
        MatrixXcd rho = MatrixXcd::Zero(d, d);
        for (int i = 0; i < n; ++i) {
            const VectorXcd& s = states[static_cast<std::size_t>(pick(eng))];
            rho += s * s.adjoint();
        }
        rho /= static_cast<double>(n);
        const double dist = trace_distance(rho, reference);
        sum += dist;
        sum2 += dist * dist;
    }
    const double mean = sum / n_boot;
    return std::sqrt(std::max(0.0, sum2 / n_boot - mean * mean));
}

} // namespace cslheat

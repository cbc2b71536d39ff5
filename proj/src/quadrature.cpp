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

#include "cslheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace cslheat {

namespace {

// 15-point Kronrod nodes (positive half) and weights, with the embedded
// 7-point Gauss weights, as tabulated in QUADPACK's dqk15.
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Interval {
    double a, b;
    double value;
    double error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval evaluate(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(center - half * xgk[j]);
        fv[14 - j] = f(center + half * xgk[j]);
    }
    fv[7] = f(center);

    double resk = wgk[7] * fv[7];
    double resg = wg[3] * fv[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        resk += wgk[j] * (fv[j] + fv[14 - j]);
        resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1) // Gauss nodes sit at the odd Kronrod indices
            resg += wg[j / 2] * (fv[j] + fv[14 - j]);
    }

    const double mean = resk * 0.5;
    double resasc = wgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    resasc *= half;
    resabs *= half;

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, eps_floor);

    return Interval{a, b, resk * half, err};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol, double abs_tol,
                                    const std::vector<double>& breakpoints,
                                    int max_intervals) {
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }

    std::vector<double> edges{a, b};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<Interval> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Interval iv = evaluate(f, edges[i], edges[i + 1]);
        total += iv.value;
        total_err += iv.error;
        heap.push(iv);
        ++res.intervals;
    }

    while (res.intervals < max_intervals) {
        const double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= target) break;

        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) { // cannot split further
            heap.push(worst);
            break;
        }
        Interval left = evaluate(f, worst.a, mid);
        Interval right = evaluate(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++res.intervals;
    }

    res.value = total;
    res.error = total_err;
    res.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
    return res;
}

} // namespace cslheat

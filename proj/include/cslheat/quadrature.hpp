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

#include <functional>
#include <vector>

namespace cslheat {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; // absolute error estimate
    int intervals = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod 15(7) on [a, b].
///
/// The interval is pre-split at the given breakpoints (integrand
/// discontinuities), then the subinterval with the largest error
/// estimate is bisected until the summed error drops below
/// max(abs_tol, rel_tol * |value|) or max_intervals is exhausted.
/// Non-convergence is reported in the result, not thrown; callers
/// decide whether that is fatal.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol, double abs_tol,
                                    const std::vector<double>& breakpoints = {},
                                    int max_intervals = 4000);

} // namespace cslheat

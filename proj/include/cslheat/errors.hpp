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

#include <stdexcept>
#include <string>

namespace cslheat {

/// Requested record (material, scenario, ...) does not exist.
class not_found_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation outside a type's documented contract (e.g. the time
/// correlation of a flat spectrum, which must go through the analytic
/// white-noise paths instead).
class unsupported_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Bad user input: malformed config, unknown key, out-of-range flag.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure (quadrature non-convergence, Newton stall).
/// Carries the best estimate obtained before giving up.
class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}

    double best_estimate() const { return best_estimate_; }

private:
    double best_estimate_;
};

} // namespace cslheat

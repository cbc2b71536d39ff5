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
#include <iosfwd>
#include <vector>

namespace cslheat {

/// d-dimensional linear SDE with m scalar Wiener drivers:
///   dX = (A X + a) dt + sum_j (B^j X + b_j) dW^j.
struct LinearSde {
    Eigen::MatrixXd A;
    Eigen::VectorXd a;
    std::vector<Eigen::MatrixXd> B;
    std::vector<Eigen::VectorXd> b;

    int dim() const { return static_cast<int>(A.rows()); }
    int drivers() const { return static_cast<int>(B.size()); }
    void validate() const; // dimension consistency
};

/// Stratonovich -> Ito: the drift gains +1/2 sum_j B^j (B^j X + b_j),
/// i.e. A += 1/2 sum_j (B^j)^2 and a += 1/2 sum_j B^j b_j. The diffusion
/// part is unchanged; for additive noise (all B^j = 0) the conversion is
/// the identity.
LinearSde strat_to_ito(const LinearSde& sde);
/// Ito -> Stratonovich: same correction with the opposite sign.
LinearSde ito_to_strat(const LinearSde& sde);

/// Text format:
///   d = 2
///   m = 1
///   A = 0 1 ; -1 0
///   a = 0 0
///   B1 = 0.5 0 ; 0 0.5
///   b1 = 0 0
LinearSde read_linear_sde(std::istream& in);
void write_linear_sde(std::ostream& out, const LinearSde& sde);

} // namespace cslheat

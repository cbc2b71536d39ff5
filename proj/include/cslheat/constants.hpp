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

namespace cslheat {

/// CODATA 2018 values, SI. Immutable by construction.
struct PhysicalConstants {
    double hbar;       // J s
    double m0;         // kg, one atomic mass unit (nucleon mass scale)
    double boltzmann;  // J/K, kept for documentation output only
};

inline constexpr PhysicalConstants constants{1.054571817e-34,
                                             1.66053906660e-27,
                                             1.380649e-23};

inline constexpr const char* version_string = "0.1.0";

} // namespace cslheat

// Copyright 2026 The GLOSA Cloud Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLOSA__UNITS_HPP_
#define GLOSA__UNITS_HPP_

#include <limits>

namespace glosa
{

// Everything internal is SI: meters, seconds, m/s, m/s^2. Latencies are the
// one exception and are carried in milliseconds, as they are reported.

inline constexpr double kMetersPerSecondPerMph = 0.44704;
inline constexpr double kMetersPerMile = 1609.344;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

constexpr double mph_to_mps(double mph) { return mph * kMetersPerSecondPerMph; }
constexpr double mps_to_mph(double mps) { return mps / kMetersPerSecondPerMph; }

}  // namespace glosa

#endif  // GLOSA__UNITS_HPP_

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

#ifndef GLOSA__ADVISORY_HPP_
#define GLOSA__ADVISORY_HPP_

#include <string_view>

namespace glosa
{

enum class AdvisoryRole { Leader, Follower };

inline std::string_view to_string(AdvisoryRole role)
{
  return role == AdvisoryRole::Leader ? "leader" : "follower";
}

/// Advised speed for one CV, stamped with the simulation time it was produced.
struct SpeedAdvisory
{
  int cv_id = -1;
  double advised_speed = 0.0;
  double generated_at = 0.0;
  int signal_id = 0;
  AdvisoryRole role = AdvisoryRole::Leader;
};

}  // namespace glosa

#endif  // GLOSA__ADVISORY_HPP_

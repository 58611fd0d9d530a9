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

#ifndef GLOSA__CONFIG_HPP_
#define GLOSA__CONFIG_HPP_

#include "glosa/cloud_emulator.hpp"
#include "glosa/corridor.hpp"
#include "glosa/metrics.hpp"
#include "glosa/traffic_sim.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glosa
{

enum class Dimension { Length, Speed, Time, Acceleration, Flow };

/// Parses "<number> <unit>" into SI (m, m/s, s, m/s^2, veh/h/ln). The unit is
/// mandatory. Throws ConfigError naming `field` on any malformed input.
double parse_quantity(std::string_view text, Dimension dimension, const std::string & field);

struct SweepSpec
{
  std::vector<DensityClass> densities;
  std::vector<std::uint64_t> seeds;
};

struct ScenarioConfig
{
  std::string name = "scenario";
  RoadwaySpec roadway;
  std::vector<SignalTimingPlan> signals{3};
  TrafficDemand demand;
  VehicleCapabilities caps;
  CarFollowingParams car_following;
  EmulatorConfig cloud;  // includes the follower MPC settings
  std::optional<std::uint64_t> latency_seed;  // defaults to the demand seed
  MetricsParams metrics;
  double duration = 900.0;
  double warm_up = 300.0;
  double dt = 1.0;
  std::string output_dir = "out";
  std::optional<SweepSpec> sweep;

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  /// Demand seed override that keeps the latency stream tied to it.
  void set_seed(std::uint64_t seed);
  void set_density(DensityClass density);
};

ScenarioConfig parse_config(const std::string & yaml_text);
/// Reads a YAML config, or the config stored inside a run manifest (*.json).
ScenarioConfig load_config(const std::string & path);

/// Canonical YAML in SI units; parse_config(to_yaml(c)) reproduces c exactly.
std::string to_yaml(const ScenarioConfig & config);

/// FNV-1a 64 of the canonical YAML, as 16 hex digits.
std::string config_hash(const ScenarioConfig & config);

}  // namespace glosa

#endif  // GLOSA__CONFIG_HPP_

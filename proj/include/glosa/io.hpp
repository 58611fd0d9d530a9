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

#ifndef GLOSA__IO_HPP_
#define GLOSA__IO_HPP_

#include "glosa/cloud_emulator.hpp"
#include "glosa/traffic_sim.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glosa
{

/// Shortest text that parses back to the same double; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double value);
/// Inverse of format_number. Throws IoError naming `what` on bad input.
double parse_number(std::string_view text, std::string_view what = "number");

std::string trajectory_csv(const std::vector<TrajectoryRow> & rows);
std::vector<TrajectoryRow> parse_trajectory_csv(const std::string & text);

std::string latency_csv(const std::vector<LatencyRecord> & records);
std::vector<LatencyRecord> parse_latency_csv(const std::string & text);

std::string read_file(const std::filesystem::path & path);
/// Writes atomically enough for our purposes: truncate then write; IoError on failure.
void write_file(const std::filesystem::path & path, std::string_view content);

}  // namespace glosa

#endif  // GLOSA__IO_HPP_

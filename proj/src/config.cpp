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

#include "glosa/config.hpp"

#include "glosa/error.hpp"
#include "glosa/io.hpp"

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <initializer_list>
#include <utility>

namespace glosa
{

namespace
{

struct UnitFactor
{
  std::string_view unit;
  double factor;
};

std::vector<UnitFactor> units_for(Dimension d)
{
  switch (d) {
    case Dimension::Length:
      return {{"m", 1.0}, {"km", 1000.0}, {"mi", kMetersPerMile}, {"ft", 0.3048}};
    case Dimension::Speed:
      return {{"m/s", 1.0}, {"mph", kMetersPerSecondPerMph}, {"km/h", 1.0 / 3.6}};
    case Dimension::Time:
      return {{"s", 1.0}, {"ms", 1e-3}, {"min", 60.0}, {"h", 3600.0}};
    case Dimension::Acceleration:
      return {{"m/s^2", 1.0}, {"m/s2", 1.0}};
    case Dimension::Flow:
      return {{"veh/h/ln", 1.0}, {"pc/h/ln", 1.0}};
  }
  return {};
}

std::string unit_list(Dimension d)
{
  std::string out;
  for (const auto & u : units_for(d)) {
    out += out.empty() ? "" : ", ";
    out += u.unit;
  }
  return out;
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dimension, const std::string & field)
{
  text = trim(text);
  double value = 0.0;
  const char * first = text.data();
  if (!text.empty() && text.front() == '+') {
    ++first;
  }
  const auto res = std::from_chars(first, text.data() + text.size(), value);
  if (res.ec != std::errc{} || !std::isfinite(value)) {
    throw ConfigError(field, "expected a number with unit (" + unit_list(dimension) + "), got '" +
                               std::string(text) + "'");
  }
  const std::string_view unit = trim(std::string_view(res.ptr, text.data() + text.size() - res.ptr));
  if (unit.empty()) {
    throw ConfigError(field, "missing unit; use one of " + unit_list(dimension));
  }
  for (const auto & u : units_for(dimension)) {
    if (u.unit == unit) {
      return u.factor == 1.0 ? value : value * u.factor;
    }
  }
  throw ConfigError(
    field, "unknown unit '" + std::string(unit) + "'; use one of " + unit_list(dimension));
}

namespace
{

std::string join(const std::string & path, const std::string & key)
{
  return path.empty() ? key : path + "." + key;
}

void require_map(const YAML::Node & node, const std::string & path)
{
  if (!node.IsMap()) {
    throw ConfigError(path.empty() ? "<root>" : path, "expected a mapping");
  }
}

void check_keys(
  const YAML::Node & node, const std::string & path, std::initializer_list<std::string_view> keys)
{
  require_map(node, path);
  for (const auto & kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(join(path, key), "unknown key");
    }
  }
}

std::string scalar(const YAML::Node & node, const std::string & field)
{
  if (!node.IsScalar()) {
    throw ConfigError(field, "expected a scalar value");
  }
  return node.Scalar();
}

double quantity(const YAML::Node & node, const std::string & field, Dimension d)
{
  return parse_quantity(scalar(node, field), d, field);
}

double plain_number(const YAML::Node & node, const std::string & field)
{
  const std::string text = scalar(node, field);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(field, "expected a plain number, got '" + text + "'");
  }
  return v;
}

template <class Int>
Int integer(const YAML::Node & node, const std::string & field)
{
  const std::string text = scalar(node, field);
  Int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError(field, "expected an integer, got '" + text + "'");
  }
  return v;
}

DensityClass density(const YAML::Node & node, const std::string & field)
{
  const std::string text = scalar(node, field);
  const auto d = parse_density(text);
  if (!d) {
    throw ConfigError(field, "expected low, medium or high, got '" + text + "'");
  }
  return *d;
}

// Calls f(value, field) for `key` if present.
template <class F>
void with(const YAML::Node & map, const std::string & path, const char * key, F && f)
{
  if (const YAML::Node v = map[key]) {
    const std::string field = join(path, key);
    f(v, field);
  }
}

void read_corridor(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "corridor";
  check_keys(n, p, {"length", "lanes_per_direction", "speed_limit", "stop_lines",
                    "advisory_floor_offset"});
  auto & r = c.roadway;
  with(n, p, "length", [&](auto & v, auto & f) { r.length = quantity(v, f, Dimension::Length); });
  with(n, p, "lanes_per_direction", [&](auto & v, auto & f) { r.lanes_per_direction = integer<int>(v, f); });
  with(n, p, "speed_limit", [&](auto & v, auto & f) { r.speed_limit = quantity(v, f, Dimension::Speed); });
  with(n, p, "advisory_floor_offset", [&](auto & v, auto & f) {
    r.advisory_floor_offset = quantity(v, f, Dimension::Speed);
  });
  with(n, p, "stop_lines", [&](auto & v, auto & f) {
    if (!v.IsSequence()) {
      throw ConfigError(f, "expected a list of positions");
    }
    r.stop_lines.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      r.stop_lines.push_back(quantity(v[i], f + "[" + std::to_string(i) + "]", Dimension::Length));
    }
  });
}

void read_signals(const YAML::Node & n, ScenarioConfig & c)
{
  if (!n.IsSequence()) {
    throw ConfigError("signals", "expected a list of timing plans");
  }
  c.signals.clear();
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string p = "signals[" + std::to_string(i) + "]";
    const YAML::Node s = n[i];
    check_keys(s, p, {"green", "yellow", "all_red", "cross_phase_total", "offset"});
    SignalTimingPlan plan;
    with(s, p, "green", [&](auto & v, auto & f) { plan.green = quantity(v, f, Dimension::Time); });
    with(s, p, "yellow", [&](auto & v, auto & f) { plan.yellow = quantity(v, f, Dimension::Time); });
    with(s, p, "all_red", [&](auto & v, auto & f) { plan.all_red = quantity(v, f, Dimension::Time); });
    with(s, p, "cross_phase_total", [&](auto & v, auto & f) {
      plan.cross_phase_total = quantity(v, f, Dimension::Time);
    });
    with(s, p, "offset", [&](auto & v, auto & f) { plan.cycle_offset = quantity(v, f, Dimension::Time); });
    c.signals.push_back(plan);
  }
}

void read_demand(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "demand";
  check_keys(n, p, {"density", "flow", "vehicle_count", "seed", "min_headway"});
  auto & d = c.demand;
  bool explicit_flow = false;
  with(n, p, "density", [&](auto & v, auto & f) { d.density = density(v, f); });
  with(n, p, "flow", [&](auto & v, auto & f) {
    d.flow = quantity(v, f, Dimension::Flow);
    explicit_flow = true;
  });
  if (!explicit_flow) {
    d.flow = nominal_flow(d.density);
  }
  with(n, p, "vehicle_count", [&](auto & v, auto & f) { d.vehicle_count = integer<int>(v, f); });
  with(n, p, "seed", [&](auto & v, auto & f) { d.seed = integer<std::uint64_t>(v, f); });
  with(n, p, "min_headway", [&](auto & v, auto & f) { d.min_headway = quantity(v, f, Dimension::Time); });
}

void read_vehicle(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "vehicle";
  check_keys(n, p, {"max_accel", "max_brake", "length", "reaction_time", "comfortable_decel", "min_gap"});
  with(n, p, "max_accel", [&](auto & v, auto & f) { c.caps.max_accel = quantity(v, f, Dimension::Acceleration); });
  with(n, p, "max_brake", [&](auto & v, auto & f) { c.caps.max_brake = quantity(v, f, Dimension::Acceleration); });
  with(n, p, "length", [&](auto & v, auto & f) {
    c.car_following.vehicle_length = quantity(v, f, Dimension::Length);
    c.cloud.mpc.vehicle_length = c.car_following.vehicle_length;
  });
  with(n, p, "reaction_time", [&](auto & v, auto & f) {
    c.car_following.reaction_time = quantity(v, f, Dimension::Time);
  });
  with(n, p, "comfortable_decel", [&](auto & v, auto & f) {
    c.car_following.comfortable_decel = quantity(v, f, Dimension::Acceleration);
  });
  with(n, p, "min_gap", [&](auto & v, auto & f) { c.car_following.min_gap = quantity(v, f, Dimension::Length); });
}

void read_platoon(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "platoon";
  check_keys(n, p, {"time_gap", "standstill_gap", "slack_weight"});
  auto & m = c.cloud.mpc;
  with(n, p, "time_gap", [&](auto & v, auto & f) { m.time_gap = quantity(v, f, Dimension::Time); });
  with(n, p, "standstill_gap", [&](auto & v, auto & f) { m.standstill_gap = quantity(v, f, Dimension::Length); });
  with(n, p, "slack_weight", [&](auto & v, auto & f) { m.slack_weight = plain_number(v, f); });
}

void read_cloud(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "cloud";
  check_keys(n, p, {"module_capacity", "stream_delay", "poll_phase", "advisory_ttl", "outages"});
  auto & e = c.cloud;
  with(n, p, "module_capacity", [&](auto & v, auto & f) { e.module_capacity = integer<int>(v, f); });
  with(n, p, "stream_delay", [&](auto & v, auto & f) { e.stream_delay = quantity(v, f, Dimension::Time); });
  with(n, p, "poll_phase", [&](auto & v, auto & f) { e.poll_phase = quantity(v, f, Dimension::Time); });
  with(n, p, "advisory_ttl", [&](auto & v, auto & f) { e.advisory_ttl = quantity(v, f, Dimension::Time); });
  with(n, p, "outages", [&](auto & v, auto & f) {
    if (!v.IsSequence()) {
      throw ConfigError(f, "expected a list of outage windows");
    }
    e.outages.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string q = f + "[" + std::to_string(i) + "]";
      check_keys(v[i], q, {"store", "from", "to"});
      Outage o;
      with(v[i], q, "store", [&](auto & x, auto & g) { o.store = scalar(x, g); });
      with(v[i], q, "from", [&](auto & x, auto & g) { o.from = quantity(x, g, Dimension::Time); });
      with(v[i], q, "to", [&](auto & x, auto & g) { o.to = quantity(x, g, Dimension::Time); });
      e.outages.push_back(o);
    }
  });
}

void read_latency(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "latency";
  check_keys(n, p, {"profile", "upload_mean", "upload_sigma", "download_mean", "download_sigma",
                    "processing_overhead", "seed"});
  auto & l = c.cloud.latency;
  with(n, p, "profile", [&](auto & v, auto & f) {
    try {
      l = latency_profile(scalar(v, f));
    } catch (const ConfigError & err) {
      throw ConfigError(f, err.what());
    }
  });
  with(n, p, "upload_mean", [&](auto & v, auto & f) { l.upload_mean_ms = 1e3 * quantity(v, f, Dimension::Time); });
  with(n, p, "download_mean", [&](auto & v, auto & f) { l.download_mean_ms = 1e3 * quantity(v, f, Dimension::Time); });
  with(n, p, "upload_sigma", [&](auto & v, auto & f) { l.upload_sigma = plain_number(v, f); });
  with(n, p, "download_sigma", [&](auto & v, auto & f) { l.download_sigma = plain_number(v, f); });
  with(n, p, "processing_overhead", [&](auto & v, auto & f) {
    l.processing_overhead_ms = 1e3 * quantity(v, f, Dimension::Time);
  });
  with(n, p, "seed", [&](auto & v, auto & f) { c.latency_seed = integer<std::uint64_t>(v, f); });
}

void read_processing(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "processing";
  check_keys(n, p, {"timing", "assigner_base", "assigner_per_cv", "optimizer_base",
                    "optimizer_per_iteration"});
  auto & m = c.cloud.processing;
  with(n, p, "timing", [&](auto & v, auto & f) {
    const std::string t = scalar(v, f);
    if (t == "modeled") {
      m.timing = TimingMode::Modeled;
    } else if (t == "measured") {
      m.timing = TimingMode::Measured;
    } else {
      throw ConfigError(f, "expected modeled or measured, got '" + t + "'");
    }
  });
  with(n, p, "assigner_base", [&](auto & v, auto & f) { m.assigner_base_ms = 1e3 * quantity(v, f, Dimension::Time); });
  with(n, p, "assigner_per_cv", [&](auto & v, auto & f) { m.assigner_per_cv_ms = 1e3 * quantity(v, f, Dimension::Time); });
  with(n, p, "optimizer_base", [&](auto & v, auto & f) { m.optimizer_base_ms = 1e3 * quantity(v, f, Dimension::Time); });
  with(n, p, "optimizer_per_iteration", [&](auto & v, auto & f) {
    m.optimizer_per_iteration_ms = 1e3 * quantity(v, f, Dimension::Time);
  });
}

void read_metrics(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "metrics";
  check_keys(n, p, {"stop_threshold", "ttc_star"});
  with(n, p, "stop_threshold", [&](auto & v, auto & f) {
    c.metrics.stop_threshold = quantity(v, f, Dimension::Speed);
  });
  with(n, p, "ttc_star", [&](auto & v, auto & f) { c.metrics.ttc_star = quantity(v, f, Dimension::Time); });
}

void read_run(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "run";
  check_keys(n, p, {"duration", "warm_up", "step", "output_dir"});
  with(n, p, "duration", [&](auto & v, auto & f) { c.duration = quantity(v, f, Dimension::Time); });
  with(n, p, "warm_up", [&](auto & v, auto & f) { c.warm_up = quantity(v, f, Dimension::Time); });
  with(n, p, "step", [&](auto & v, auto & f) { c.dt = quantity(v, f, Dimension::Time); });
  with(n, p, "output_dir", [&](auto & v, auto & f) { c.output_dir = scalar(v, f); });
}

void read_sweep(const YAML::Node & n, ScenarioConfig & c)
{
  const std::string p = "sweep";
  check_keys(n, p, {"densities", "seeds"});
  SweepSpec s;
  s.densities = {DensityClass::Low, DensityClass::Medium, DensityClass::High};
  s.seeds = {c.demand.seed};
  with(n, p, "densities", [&](auto & v, auto & f) {
    if (!v.IsSequence() || v.size() == 0) {
      throw ConfigError(f, "expected a non-empty list");
    }
    s.densities.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      s.densities.push_back(density(v[i], f + "[" + std::to_string(i) + "]"));
    }
  });
  with(n, p, "seeds", [&](auto & v, auto & f) {
    if (!v.IsSequence() || v.size() == 0) {
      throw ConfigError(f, "expected a non-empty list");
    }
    s.seeds.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      s.seeds.push_back(integer<std::uint64_t>(v[i], f + "[" + std::to_string(i) + "]"));
    }
  });
  c.sweep = s;
}

}  // namespace

void ScenarioConfig::validate() const
{
  roadway.validate();
  if (signals.size() != roadway.stop_lines.size()) {
    throw ConfigError("signals", "need one timing plan per stop line (" +
                                   std::to_string(roadway.stop_lines.size()) + ")");
  }
  for (std::size_t i = 0; i < signals.size(); ++i) {
    try {
      signals[i].validate();
    } catch (const ConfigError & e) {
      throw ConfigError("signals[" + std::to_string(i) + "]", e.what());
    }
  }
  demand.validate();
  caps.validate();
  car_following.validate();
  cloud.validate();
  if (!(cloud.mpc.time_gap > 0.0)) {
    throw ConfigError("platoon.time_gap", "must be positive");
  }
  if (!(cloud.mpc.standstill_gap >= 0.0)) {
    throw ConfigError("platoon.standstill_gap", "must be non-negative");
  }
  if (!(cloud.mpc.slack_weight > 0.0)) {
    throw ConfigError("platoon.slack_weight", "must be positive");
  }
  if (!(metrics.stop_threshold >= 0.0)) {
    throw ConfigError("metrics.stop_threshold", "must be non-negative");
  }
  if (!(metrics.ttc_star > 0.0)) {
    throw ConfigError("metrics.ttc_star", "must be positive");
  }
  if (!(duration > 0.0)) {
    throw ConfigError("run.duration", "must be positive");
  }
  if (!(warm_up >= 0.0) || !(warm_up < duration)) {
    throw ConfigError("run.warm_up", "must lie in [0, duration)");
  }
  if (!(dt > 0.0)) {
    throw ConfigError("run.step", "must be positive");
  }
  if (!(cloud.poll_phase < dt)) {
    throw ConfigError("cloud.poll_phase", "must be shorter than the step");
  }
  if (std::abs(metrics.dt - dt) > 0.0) {
    throw ConfigError("run.step", "metrics sampling must match the step");
  }
  if (output_dir.empty()) {
    throw ConfigError("run.output_dir", "must not be empty");
  }
}

void ScenarioConfig::set_seed(std::uint64_t seed) { demand.seed = seed; }

void ScenarioConfig::set_density(DensityClass d)
{
  demand.density = d;
  demand.flow = nominal_flow(d);
}

ScenarioConfig parse_config(const std::string & yaml_text)
{
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception & e) {
    throw ConfigError("<yaml>", e.what());
  }
  ScenarioConfig c;
  if (root.IsNull()) {
    c.validate();
    return c;
  }
  check_keys(root, "", {"name", "corridor", "signals", "demand", "vehicle", "platoon", "cloud",
                        "latency", "processing", "metrics", "run", "sweep"});
  with(root, "", "name", [&](auto & v, auto & f) { c.name = scalar(v, f); });
  with(root, "", "corridor", [&](auto & v, auto &) { read_corridor(v, c); });
  with(root, "", "signals", [&](auto & v, auto &) { read_signals(v, c); });
  with(root, "", "demand", [&](auto & v, auto &) { read_demand(v, c); });
  with(root, "", "vehicle", [&](auto & v, auto &) { read_vehicle(v, c); });
  with(root, "", "platoon", [&](auto & v, auto &) { read_platoon(v, c); });
  with(root, "", "cloud", [&](auto & v, auto &) { read_cloud(v, c); });
  with(root, "", "latency", [&](auto & v, auto &) { read_latency(v, c); });
  with(root, "", "processing", [&](auto & v, auto &) { read_processing(v, c); });
  with(root, "", "metrics", [&](auto & v, auto &) { read_metrics(v, c); });
  with(root, "", "run", [&](auto & v, auto &) { read_run(v, c); });
  with(root, "", "sweep", [&](auto & v, auto &) { read_sweep(v, c); });
  c.metrics.dt = c.dt;
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::string & path)
{
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError & e) {
    throw ConfigError("<file>", e.what());
  }
  if (std::filesystem::path(path).extension() == ".json") {
    try {
      const auto manifest = nlohmann::json::parse(text);
      return parse_config(manifest.at("config_yaml").get<std::string>());
    } catch (const nlohmann::json::exception & e) {
      throw ConfigError("<manifest>", e.what());
    }
  }
  return parse_config(text);
}

namespace
{

std::string q(double v, std::string_view unit) { return format_number(v) + " " + std::string(unit); }

}  // namespace

std::string to_yaml(const ScenarioConfig & c)
{
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << c.name;

  out << YAML::Key << "corridor" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "length" << YAML::Value << q(c.roadway.length, "m");
  out << YAML::Key << "lanes_per_direction" << YAML::Value << c.roadway.lanes_per_direction;
  out << YAML::Key << "speed_limit" << YAML::Value << q(c.roadway.speed_limit, "m/s");
  out << YAML::Key << "stop_lines" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const double s : c.roadway.stop_lines) {
    out << q(s, "m");
  }
  out << YAML::EndSeq;
  out << YAML::Key << "advisory_floor_offset" << YAML::Value << q(c.roadway.advisory_floor_offset, "m/s");
  out << YAML::EndMap;

  out << YAML::Key << "signals" << YAML::Value << YAML::BeginSeq;
  for (const auto & s : c.signals) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "green" << YAML::Value << q(s.green, "s");
    out << YAML::Key << "yellow" << YAML::Value << q(s.yellow, "s");
    out << YAML::Key << "all_red" << YAML::Value << q(s.all_red, "s");
    out << YAML::Key << "cross_phase_total" << YAML::Value << q(s.cross_phase_total, "s");
    out << YAML::Key << "offset" << YAML::Value << q(s.cycle_offset, "s");
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "demand" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "density" << YAML::Value << std::string(to_string(c.demand.density));
  out << YAML::Key << "flow" << YAML::Value << q(c.demand.flow, "veh/h/ln");
  out << YAML::Key << "vehicle_count" << YAML::Value << c.demand.vehicle_count;
  out << YAML::Key << "seed" << YAML::Value << std::to_string(c.demand.seed);
  out << YAML::Key << "min_headway" << YAML::Value << q(c.demand.min_headway, "s");
  out << YAML::EndMap;

  out << YAML::Key << "vehicle" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "max_accel" << YAML::Value << q(c.caps.max_accel, "m/s^2");
  out << YAML::Key << "max_brake" << YAML::Value << q(c.caps.max_brake, "m/s^2");
  out << YAML::Key << "length" << YAML::Value << q(c.car_following.vehicle_length, "m");
  out << YAML::Key << "reaction_time" << YAML::Value << q(c.car_following.reaction_time, "s");
  out << YAML::Key << "comfortable_decel" << YAML::Value << q(c.car_following.comfortable_decel, "m/s^2");
  out << YAML::Key << "min_gap" << YAML::Value << q(c.car_following.min_gap, "m");
  out << YAML::EndMap;

  out << YAML::Key << "platoon" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "time_gap" << YAML::Value << q(c.cloud.mpc.time_gap, "s");
  out << YAML::Key << "standstill_gap" << YAML::Value << q(c.cloud.mpc.standstill_gap, "m");
  out << YAML::Key << "slack_weight" << YAML::Value << format_number(c.cloud.mpc.slack_weight);
  out << YAML::EndMap;

  out << YAML::Key << "cloud" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "module_capacity" << YAML::Value << c.cloud.module_capacity;
  out << YAML::Key << "stream_delay" << YAML::Value << q(c.cloud.stream_delay, "s");
  out << YAML::Key << "poll_phase" << YAML::Value << q(c.cloud.poll_phase, "s");
  out << YAML::Key << "advisory_ttl" << YAML::Value << q(c.cloud.advisory_ttl, "s");
  out << YAML::Key << "outages" << YAML::Value << YAML::BeginSeq;
  for (const auto & o : c.cloud.outages) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "store" << YAML::Value << o.store;
    out << YAML::Key << "from" << YAML::Value << q(o.from, "s");
    out << YAML::Key << "to" << YAML::Value << q(o.to, "s");
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;

  const auto & l = c.cloud.latency;
  out << YAML::Key << "latency" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "upload_mean" << YAML::Value << q(l.upload_mean_ms, "ms");
  out << YAML::Key << "upload_sigma" << YAML::Value << format_number(l.upload_sigma);
  out << YAML::Key << "download_mean" << YAML::Value << q(l.download_mean_ms, "ms");
  out << YAML::Key << "download_sigma" << YAML::Value << format_number(l.download_sigma);
  out << YAML::Key << "processing_overhead" << YAML::Value << q(l.processing_overhead_ms, "ms");
  if (c.latency_seed) {
    out << YAML::Key << "seed" << YAML::Value << std::to_string(*c.latency_seed);
  }
  out << YAML::EndMap;

  const auto & p = c.cloud.processing;
  out << YAML::Key << "processing" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "timing" << YAML::Value
      << (p.timing == TimingMode::Modeled ? "modeled" : "measured");
  out << YAML::Key << "assigner_base" << YAML::Value << q(p.assigner_base_ms, "ms");
  out << YAML::Key << "assigner_per_cv" << YAML::Value << q(p.assigner_per_cv_ms, "ms");
  out << YAML::Key << "optimizer_base" << YAML::Value << q(p.optimizer_base_ms, "ms");
  out << YAML::Key << "optimizer_per_iteration" << YAML::Value << q(p.optimizer_per_iteration_ms, "ms");
  out << YAML::EndMap;

  out << YAML::Key << "metrics" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "stop_threshold" << YAML::Value << q(c.metrics.stop_threshold, "m/s");
  out << YAML::Key << "ttc_star" << YAML::Value << q(c.metrics.ttc_star, "s");
  out << YAML::EndMap;

  out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "duration" << YAML::Value << q(c.duration, "s");
  out << YAML::Key << "warm_up" << YAML::Value << q(c.warm_up, "s");
  out << YAML::Key << "step" << YAML::Value << q(c.dt, "s");
  out << YAML::Key << "output_dir" << YAML::Value << YAML::DoubleQuoted << c.output_dir;
  out << YAML::EndMap;

  if (c.sweep) {
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "densities" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto d : c.sweep->densities) {
      out << std::string(to_string(d));
    }
    out << YAML::EndSeq;
    out << YAML::Key << "seeds" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto s : c.sweep->seeds) {
      out << std::to_string(s);
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string config_hash(const ScenarioConfig & config)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : to_yaml(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace glosa

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

#ifndef GLOSA__TRAFFIC_SIM_HPP_
#define GLOSA__TRAFFIC_SIM_HPP_

#include "glosa/advisory.hpp"
#include "glosa/corridor.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace glosa
{

struct VehicleCapabilities
{
  double max_accel = 2.5;   // a_Acc, > 0
  double max_brake = -4.5;  // a_Brk, < 0

  void validate() const;
};

/// Parameters of the deterministic Krauss-style baseline driver.
struct CarFollowingParams
{
  double reaction_time = 1.0;      // tau
  double comfortable_decel = 4.5;  // b, > 0
  double vehicle_length = 5.0;     // l_CV
  double min_gap = 2.0;            // kept to the rear bumper ahead while moving

  void validate() const;
};

enum class DensityClass { Low, Medium, High };

std::string_view to_string(DensityClass density);
std::optional<DensityClass> parse_density(std::string_view text);
/// Demand in pc/h/ln for the named class: 633, 1267, 1900.
double nominal_flow(DensityClass density);

struct TrafficDemand
{
  DensityClass density = DensityClass::Low;
  double flow = 633.0;  // pc/h/ln
  int vehicle_count = 50;
  std::uint64_t seed = 1;
  double start_time = 0.0;   // first arrival no earlier than this
  double min_headway = 1.0;  // shift of the per-lane exponential headway

  void validate() const;
};

struct Arrival
{
  int id = 0;
  int lane = 0;
  double time = 0.0;
};

/// Arrival schedule: lanes are filled round-robin, per-lane headways are a
/// shifted exponential with mean 3600 / flow. Deterministic in `demand.seed`.
std::vector<Arrival> spawn_traffic(const TrafficDemand & demand, int lanes);

/// Krauss safe speed: the fastest speed from which the follower can still stop
/// behind a leader braking at `b`, given reaction time `tau`. Clamped at 0.
double safe_speed(double speed, double pred_speed, double gap, double tau, double b);

/// Kinematic state of one CV. `x` is the front bumper position along the
/// travel axis; `gap` is to the rear bumper of the vehicle ahead (infinite if none).
struct CvState
{
  int id = 0;
  int lane = 0;
  double x = 0.0;
  double speed = 0.0;
  double gap = kInfinity;
  double length = 5.0;
};

/// Filtered BSM as uploaded to the trajectory store.
struct BsmRecord
{
  int id = 0;
  int lane = 0;
  double x = 0.0;
  double speed = 0.0;
  double gap = kInfinity;
  double t = 0.0;
};

/// One row of the trajectory log: the state at `t` and the advisory applied
/// over the step that starts at `t`, if any.
struct TrajectoryRow
{
  double t = 0.0;
  int id = 0;
  int lane = 0;
  double x = 0.0;
  double speed = 0.0;
  double gap = kInfinity;
  std::optional<double> advised_speed;
};

/// The corridor with its vehicles. Lanes are independent car-following chains.
class World
{
public:
  World(
    RoadwaySpec roadway, std::vector<SignalTimingPlan> plans, VehicleCapabilities caps,
    CarFollowingParams params, std::vector<Arrival> arrivals, double start_time = 0.0);

  double time() const { return time_; }
  const RoadwaySpec & roadway() const { return roadway_; }
  const std::vector<SignalTimingPlan> & plans() const { return plans_; }
  const VehicleCapabilities & capabilities() const { return caps_; }
  const CarFollowingParams & params() const { return params_; }

  /// Advance by `dt` with every CV on the baseline law.
  void step_baseline(double dt);

  /// Advance by `dt`; CVs present in `advisories` track their advised speed,
  /// rate-limited by their capabilities. Safety rules always win.
  void step_advised(const std::map<int, SpeedAdvisory> & advisories, double dt);

  /// One record per active CV.
  std::vector<BsmRecord> bsm_snapshot() const;

  /// Active CVs plus the ones that crossed the corridor exit in the last step.
  std::vector<CvState> states() const;
  std::vector<CvState> active_states() const;
  const std::vector<CvState> & just_exited() const { return just_exited_; }

  std::size_t active_count() const;
  std::size_t pending_count() const;
  bool finished() const { return pending_count() == 0 && active_count() == 0; }

private:
  enum class LineDecision : std::uint8_t { Undecided, Stop, Pass };

  struct Vehicle
  {
    CvState state;
    double entered_at = 0.0;
    int next_signal = 0;
    LineDecision decision = LineDecision::Undecided;
  };

  void advance(const std::map<int, SpeedAdvisory> * advisories, double dt);
  void insert_arrivals();
  void update_gaps(std::deque<Vehicle> & lane);
  int next_signal_index(double x) const;

  RoadwaySpec roadway_;
  std::vector<SignalTimingPlan> plans_;
  VehicleCapabilities caps_;
  CarFollowingParams params_;
  std::vector<std::deque<Vehicle>> lanes_;  // front (most downstream) first
  std::vector<std::deque<Arrival>> pending_;  // per lane, in arrival order
  std::vector<CvState> just_exited_;
  double time_ = 0.0;
  double step_ = 1.0;  // last dt, used to size insertion speeds
};

}  // namespace glosa

#endif  // GLOSA__TRAFFIC_SIM_HPP_

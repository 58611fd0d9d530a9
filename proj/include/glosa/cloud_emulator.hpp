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

#ifndef GLOSA__CLOUD_EMULATOR_HPP_
#define GLOSA__CLOUD_EMULATOR_HPP_

#include "glosa/advisory.hpp"
#include "glosa/corridor.hpp"
#include "glosa/follower_mpc.hpp"
#include "glosa/platooning.hpp"
#include "glosa/traffic_sim.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace glosa
{

/// Window [from, to) during which a store rejects reads and writes.
struct Outage
{
  std::string store;  // "trajectory", "advisory" or "distance_history"
  double from = 0.0;
  double to = 0.0;
};

template <class T>
struct Committed
{
  T payload;
  double written_at = 0.0;
};

/// Key-value table with commit timestamps. A read at time t sees, per key, the
/// latest write committed at or before t; among writes committed at the same
/// instant the last one issued wins.
template <class T>
class KeyValueStore
{
public:
  explicit KeyValueStore(std::string name = {}, std::vector<Outage> outages = {})
  : name_(std::move(name))
  {
    for (auto & o : outages) {
      if (o.store == name_ || (name_.rfind(o.store, 0) == 0 && o.store == "distance_history")) {
        outages_.emplace_back(o.from, o.to);
      }
    }
  }

  const std::string & name() const { return name_; }

  bool available(double t) const
  {
    for (const auto & [from, to] : outages_) {
      if (t >= from && t < to) {
        return false;
      }
    }
    return true;
  }

  /// Returns false (and drops the write) if the store is down at `commit_time`.
  bool write(int key, T payload, double commit_time)
  {
    if (!available(commit_time)) {
      return false;
    }
    auto & versions = data_[key];
    auto it = versions.end();
    while (it != versions.begin() && std::prev(it)->written_at > commit_time) {
      --it;
    }
    versions.insert(it, Committed<T>{std::move(payload), commit_time});
    if (versions.size() > kMaxVersions) {
      versions.erase(versions.begin());
    }
    ++writes_;
    return true;
  }

  std::optional<Committed<T>> read(int key, double t) const
  {
    const auto found = data_.find(key);
    if (found == data_.end()) {
      return std::nullopt;
    }
    const auto & versions = found->second;
    for (auto it = versions.rbegin(); it != versions.rend(); ++it) {
      if (it->written_at <= t) {
        return *it;
      }
    }
    return std::nullopt;
  }

  /// Latest visible version of every key, in key order.
  std::vector<std::pair<int, Committed<T>>> read_all(double t) const
  {
    std::vector<std::pair<int, Committed<T>>> out;
    for (const auto & [key, versions] : data_) {
      (void)versions;
      if (auto v = read(key, t)) {
        out.emplace_back(key, std::move(*v));
      }
    }
    return out;
  }

  void erase(int key) { data_.erase(key); }
  std::size_t key_count() const { return data_.size(); }
  std::uint64_t write_count() const { return writes_; }

private:
  static constexpr std::size_t kMaxVersions = 8;

  std::string name_;
  std::vector<std::pair<double, double>> outages_;
  std::map<int, std::vector<Committed<T>>> data_;
  std::uint64_t writes_ = 0;
};

/// Network delays (log-normal, mean in ms, sigma in log space) and the fixed
/// cloud-side overhead per cluster invocation.
struct LatencyModel
{
  double upload_mean_ms = 75.0;
  double upload_sigma = 0.25;
  double download_mean_ms = 78.0;
  double download_sigma = 0.25;
  double processing_overhead_ms = 295.0;
  std::uint64_t seed = 7;

  void validate() const;
};

/// Named presets selectable from the command line.
LatencyModel latency_profile(const std::string & name);

enum class TimingMode { Modeled, Measured };

/// Compute-time model for assigner and optimizer workers. `Modeled` derives
/// times from work counts and is reproducible; `Measured` uses the host clock.
struct ProcessingModel
{
  TimingMode timing = TimingMode::Modeled;
  double assigner_base_ms = 1.0;
  double assigner_per_cv_ms = 0.02;
  double optimizer_base_ms = 1.5;
  double optimizer_per_iteration_ms = 0.01;

  void validate() const;
};

class LatencySampler
{
public:
  explicit LatencySampler(const LatencyModel & model);
  double upload_ms();
  double download_ms();

private:
  std::mt19937_64 upload_rng_;
  std::mt19937_64 download_rng_;
  std::lognormal_distribution<double> upload_;
  std::lognormal_distribution<double> download_;
};

/// BSM as stored in the trajectory database, with the delay it took to get there.
struct StoredBsm
{
  BsmRecord bsm;
  double upload_ms = 0.0;
};

/// Advisory as stored in the advisory database, with its provenance.
struct StoredAdvisory
{
  SpeedAdvisory advisory;
  double bsm_time = 0.0;   // timestamp of the BSM it was computed from
  double bsm_speed = 0.0;  // speed reported in that BSM
  double upload_ms = 0.0;
  double processing_ms = 0.0;
};

struct LatencyRecord
{
  double t = 0.0;  // delivery time
  int cv_id = 0;
  double upload_ms = 0.0;
  double processing_ms = 0.0;
  double download_ms = 0.0;
  double end_to_end_ms = 0.0;
  double staleness_ms = 0.0;  // delivery time - advisory generation time
};

/// upload + processing + download.
double end_to_end(const LatencyRecord & record);

struct TriggerEvent
{
  int signal_id = 0;
  double t = 0.0;
  SignalPhaseState phase;
};

/// SPaT-driven trigger for one signal at time `t`.
TriggerEvent tick_stream(int signal_id, double t, const SignalTimingPlan & plan);

struct UploadReceipt
{
  int cv_id = 0;
  double upload_ms = 0.0;
  double commit_time = 0.0;
  bool committed = false;
};

/// Each BSM commits at t + a sampled upload delay.
std::vector<UploadReceipt> upload_bsms(
  const std::vector<BsmRecord> & bsms, KeyValueStore<StoredBsm> & store, LatencySampler & sampler,
  double t);

struct AdvisoryModule
{
  int module_id = 0;
  std::vector<int> members;
  std::vector<Platoon> platoons;
  double processing_ms = 0.0;
};

/// ceil(n / capacity) modules, filled in the given (distance) order.
std::vector<AdvisoryModule> partition_modules(const std::vector<int> & cv_ids, int capacity);

/// Everything the platoon assigner and optimizers need besides the stores.
struct ClusterContext
{
  const RoadwaySpec * roadway = nullptr;
  const std::vector<SignalTimingPlan> * plans = nullptr;
  VehicleCapabilities caps;
  MpcParams mpc;
  ProcessingModel processing;
  double processing_overhead_ms = 295.0;
  int module_capacity = 50;
  double dt = 1.0;
};

struct ClusterStores
{
  KeyValueStore<StoredBsm> * trajectory = nullptr;
  KeyValueStore<double> * distance_history = nullptr;
  KeyValueStore<StoredAdvisory> * advisory = nullptr;
};

struct ClusterResult
{
  int signal_id = 0;
  double triggered_at = 0.0;
  bool skipped = false;
  std::string skip_reason;
  std::vector<SpeedAdvisory> advisories;
  std::vector<AdvisoryModule> modules;
  std::vector<int> handoffs;  // CVs seen crossing this stop line
  std::vector<int> read_set;  // CVs whose BSM was visible and routed here
  double processing_ms = 0.0;
  int case1_platoons = 0;
  int case2_platoons = 0;
  int unassigned = 0;
  int softened_solves = 0;
  int optimal_solves = 0;
};

/// One invocation of the advisory cluster of `trigger.signal_id`.
ClusterResult run_cluster(
  const TriggerEvent & trigger, const ClusterStores & stores, const ClusterContext & context);

struct Download
{
  std::optional<StoredAdvisory> advisory;
  double download_ms = 0.0;
  double delivered_at = 0.0;
};

/// Latest advisory for `cv_id` visible at `t`, delivered after a sampled delay.
Download download_advisory(
  int cv_id, const KeyValueStore<StoredAdvisory> & store, LatencySampler & sampler, double t);

struct EmulatorConfig
{
  LatencyModel latency;
  ProcessingModel processing;
  MpcParams mpc;
  int module_capacity = 50;
  double stream_delay = 0.25;  // SPaT tick to cluster start, s
  double poll_phase = 0.6;     // CVs poll this long after each tick, s
  double advisory_ttl = 1.0;   // older advisories fall back to the baseline law, s
  std::vector<Outage> outages;

  void validate() const;
};

/// Applied advisory with the audit data tying it back to its BSM.
struct Delivery
{
  SpeedAdvisory advisory;
  LatencyRecord latency;
  double bsm_time = 0.0;
  double bsm_speed = 0.0;
};

struct FaultEvent
{
  double t = 0.0;
  int signal_id = -1;
  std::string what;
};

/// The serverless pipeline for one corridor: stores, stream triggers, clusters
/// and CV polling, advanced one simulation tick at a time.
class CloudEmulator
{
public:
  CloudEmulator(
    EmulatorConfig config, const RoadwaySpec & roadway, const std::vector<SignalTimingPlan> & plans,
    const VehicleCapabilities & caps, double dt);

  /// Uploads, cluster runs and polls for the tick at `t`. Returns the
  /// advisories delivered in response, keyed by CV.
  std::map<int, Delivery> tick(const std::vector<BsmRecord> & bsms, double t);

  const std::vector<ClusterResult> & cluster_log() const { return clusters_; }
  const std::vector<FaultEvent> & faults() const { return faults_; }
  std::size_t cluster_runs() const { return clusters_.size(); }

private:
  EmulatorConfig config_;
  RoadwaySpec roadway_;
  std::vector<SignalTimingPlan> plans_;
  ClusterContext context_;
  LatencySampler sampler_;
  KeyValueStore<StoredBsm> trajectory_;
  KeyValueStore<StoredAdvisory> advisory_;
  std::vector<KeyValueStore<double>> distance_history_;
  std::map<int, double> last_delivered_;  // cv -> generated_at of the last delivery
  std::vector<ClusterResult> clusters_;
  std::vector<FaultEvent> faults_;
};

}  // namespace glosa

#endif  // GLOSA__CLOUD_EMULATOR_HPP_

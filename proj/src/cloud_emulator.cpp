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

#include "glosa/cloud_emulator.hpp"

#include "glosa/error.hpp"
#include "glosa/leader_advisor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace glosa
{

void LatencyModel::validate() const
{
  if (!(upload_mean_ms > 0.0)) {
    throw ConfigError("latency.upload_mean", "must be positive");
  }
  if (!(download_mean_ms > 0.0)) {
    throw ConfigError("latency.download_mean", "must be positive");
  }
  if (!(upload_sigma >= 0.0)) {
    throw ConfigError("latency.upload_sigma", "must be non-negative");
  }
  if (!(download_sigma >= 0.0)) {
    throw ConfigError("latency.download_sigma", "must be non-negative");
  }
  if (!(processing_overhead_ms >= 0.0)) {
    throw ConfigError("latency.processing_overhead", "must be non-negative");
  }
}

LatencyModel latency_profile(const std::string & name)
{
  LatencyModel m;
  if (name == "default") {
    return m;
  }
  if (name == "fast") {
    m.upload_mean_ms = 20.0;
    m.download_mean_ms = 20.0;
    m.processing_overhead_ms = 60.0;
    return m;
  }
  if (name == "slow") {
    m.upload_mean_ms = 150.0;
    m.download_mean_ms = 150.0;
    m.upload_sigma = 0.4;
    m.download_sigma = 0.4;
    m.processing_overhead_ms = 400.0;
    return m;
  }
  if (name == "ideal") {
    m.upload_mean_ms = 1.0;
    m.download_mean_ms = 1.0;
    m.upload_sigma = 0.0;
    m.download_sigma = 0.0;
    m.processing_overhead_ms = 0.0;
    return m;
  }
  throw ConfigError("latency_profile", "unknown profile '" + name + "'");
}

void ProcessingModel::validate() const
{
  if (
    !(assigner_base_ms >= 0.0) || !(assigner_per_cv_ms >= 0.0) || !(optimizer_base_ms >= 0.0) ||
    !(optimizer_per_iteration_ms >= 0.0)) {
    throw ConfigError("processing", "compute costs must be non-negative");
  }
}

namespace
{

std::lognormal_distribution<double> lognormal_with_mean(double mean, double sigma)
{
  return std::lognormal_distribution<double>(std::log(mean) - 0.5 * sigma * sigma, sigma);
}

double sample(std::lognormal_distribution<double> & d, std::mt19937_64 & rng)
{
  return d.s() == 0.0 ? std::exp(d.m()) : d(rng);
}

}  // namespace

LatencySampler::LatencySampler(const LatencyModel & model)
: upload_rng_(model.seed * 2 + 1),
  download_rng_(model.seed * 2 + 2),
  upload_(lognormal_with_mean(model.upload_mean_ms, model.upload_sigma)),
  download_(lognormal_with_mean(model.download_mean_ms, model.download_sigma))
{
  model.validate();
}

double LatencySampler::upload_ms() { return sample(upload_, upload_rng_); }
double LatencySampler::download_ms() { return sample(download_, download_rng_); }

double end_to_end(const LatencyRecord & record)
{
  return record.upload_ms + record.processing_ms + record.download_ms;
}

TriggerEvent tick_stream(int signal_id, double t, const SignalTimingPlan & plan)
{
  return TriggerEvent{signal_id, t, phase_at(plan, t, signal_id)};
}

std::vector<UploadReceipt> upload_bsms(
  const std::vector<BsmRecord> & bsms, KeyValueStore<StoredBsm> & store, LatencySampler & sampler,
  double t)
{
  std::vector<UploadReceipt> out;
  out.reserve(bsms.size());
  for (const auto & bsm : bsms) {
    UploadReceipt r;
    r.cv_id = bsm.id;
    r.upload_ms = sampler.upload_ms();
    r.commit_time = t + r.upload_ms / 1000.0;
    r.committed = store.write(bsm.id, StoredBsm{bsm, r.upload_ms}, r.commit_time);
    out.push_back(r);
  }
  return out;
}

std::vector<AdvisoryModule> partition_modules(const std::vector<int> & cv_ids, int capacity)
{
  if (capacity <= 0) {
    throw std::invalid_argument("partition_modules: capacity must be positive");
  }
  std::vector<AdvisoryModule> modules;
  for (std::size_t i = 0; i < cv_ids.size(); ++i) {
    if (i % static_cast<std::size_t>(capacity) == 0) {
      modules.push_back(AdvisoryModule{static_cast<int>(modules.size()), {}, {}, 0.0});
    }
    modules.back().members.push_back(cv_ids[i]);
  }
  return modules;
}

namespace
{

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// BSMs older than this are treated as lost vehicles and not advised.
constexpr double kBsmMaxAge = 2.0;

}  // namespace

ClusterResult run_cluster(
  const TriggerEvent & trigger, const ClusterStores & stores, const ClusterContext & context)
{
  if (!context.roadway || !context.plans || !stores.trajectory || !stores.distance_history ||
      !stores.advisory) {
    throw std::invalid_argument("run_cluster: incomplete context");
  }
  const RoadwaySpec & roadway = *context.roadway;
  const auto k = static_cast<std::size_t>(trigger.signal_id);
  if (k >= roadway.stop_lines.size() || k >= context.plans->size()) {
    throw std::invalid_argument("run_cluster: unknown signal");
  }
  const double line = roadway.stop_lines[k];
  const double upstream = k == 0 ? 0.0 : roadway.stop_lines[k - 1];
  const double t = trigger.t;

  ClusterResult result;
  result.signal_id = trigger.signal_id;
  result.triggered_at = t;
  for (const auto * name : {"trajectory", "distance_history", "advisory"}) {
    const bool up = std::string(name) == "trajectory"      ? stores.trajectory->available(t)
                    : std::string(name) == "advisory"      ? stores.advisory->available(t)
                                                           : stores.distance_history->available(t);
    if (!up) {
      result.skipped = true;
      result.skip_reason = std::string(name) + " store unavailable";
      return result;
    }
  }

  // Read set: committed BSMs routed to this signal; hand off CVs past the line.
  std::vector<StoredBsm> approaching;
  for (auto & [id, committed] : stores.trajectory->read_all(t)) {
    const BsmRecord & bsm = committed.payload.bsm;
    if (t - bsm.t > kBsmMaxAge) {
      continue;
    }
    if (bsm.x > line) {
      if (stores.distance_history->read(id, t)) {
        stores.distance_history->erase(id);
        result.handoffs.push_back(id);
      }
      continue;
    }
    // Standing on this line (nothing left to advise) or on the previous one.
    if (bsm.x == line || bsm.x < upstream || (k > 0 && bsm.x == upstream)) {
      continue;
    }
    stores.distance_history->write(id, line - bsm.x, t);
    approaching.push_back(committed.payload);
  }
  std::sort(approaching.begin(), approaching.end(), [&](const StoredBsm & a, const StoredBsm & b) {
    return a.bsm.x != b.bsm.x ? a.bsm.x > b.bsm.x : a.bsm.id < b.bsm.id;
  });
  std::map<int, const StoredBsm *> by_id;
  std::vector<int> ordered;
  for (const auto & s : approaching) {
    ordered.push_back(s.bsm.id);
    by_id[s.bsm.id] = &s;
  }
  result.read_set = ordered;

  const SignalTimingPlan & plan = (*context.plans)[k];
  result.modules = partition_modules(ordered, context.module_capacity);
  double slowest_module = 0.0;
  struct Pending
  {
    SpeedAdvisory advisory;
    const StoredBsm * source;
  };
  std::vector<Pending> produced;

  for (auto & module : result.modules) {
    const auto assign_start = Clock::now();
    std::vector<BsmRecord> bsms;
    bsms.reserve(module.members.size());
    for (const int id : module.members) {
      bsms.push_back(by_id.at(id)->bsm);
    }
    module.platoons = identify_platoons(
      bsms, line, trigger.phase, plan, roadway.speed_limit, context.caps.max_accel);
    double assign_ms = elapsed_ms(assign_start);
    if (context.processing.timing == TimingMode::Modeled) {
      assign_ms = context.processing.assigner_base_ms +
                  context.processing.assigner_per_cv_ms * static_cast<double>(bsms.size());
    }

    double slowest_optimizer = 0.0;
    for (const auto & platoon : module.platoons) {
      if (platoon.platoon_case == PlatoonCase::Unassigned) {
        result.unassigned += static_cast<int>(platoon.members.size());
        continue;
      }
      ++(platoon.platoon_case == PlatoonCase::I ? result.case1_platoons : result.case2_platoons);
      const auto opt_start = Clock::now();
      const SpeedAdvisory leader =
        optimize_leader(platoon, platoon.available_time, roadway, context.caps, t);
      produced.push_back({leader, by_id.at(leader.cv_id)});
      int iterations = 0;
      if (platoon.follower_count() > 0) {
        const GapSystem system = build_qp(
          platoon, leader, context.dt, context.caps, roadway.speed_limit, context.mpc);
        const FollowerPlan fp = optimize_followers(system, t, context.mpc);
        iterations = fp.iterations;
        ++(fp.status == QpStatus::Softened ? result.softened_solves : result.optimal_solves);
        for (const auto & adv : fp.advisories) {
          produced.push_back({adv, by_id.at(adv.cv_id)});
        }
      }
      double opt_ms = elapsed_ms(opt_start);
      if (context.processing.timing == TimingMode::Modeled) {
        opt_ms = context.processing.optimizer_base_ms +
                 context.processing.optimizer_per_iteration_ms * iterations;
      }
      slowest_optimizer = std::max(slowest_optimizer, opt_ms);
    }
    module.processing_ms = assign_ms + slowest_optimizer;
    slowest_module = std::max(slowest_module, module.processing_ms);
  }

  // Modules and optimizers run in parallel; the cluster finishes with its slowest path.
  result.processing_ms = context.processing_overhead_ms + slowest_module;
  const double generated_at = t + result.processing_ms / 1000.0;
  for (auto & p : produced) {
    p.advisory.generated_at = generated_at;
    StoredAdvisory stored{
      p.advisory, p.source->bsm.t, p.source->bsm.speed, p.source->upload_ms, result.processing_ms};
    if (stores.advisory->write(p.advisory.cv_id, stored, generated_at)) {
      result.advisories.push_back(p.advisory);
    }
  }
  return result;
}

Download download_advisory(
  int cv_id, const KeyValueStore<StoredAdvisory> & store, LatencySampler & sampler, double t)
{
  Download d;
  if (!store.available(t)) {
    return d;
  }
  if (auto found = store.read(cv_id, t)) {
    d.advisory = found->payload;
    d.download_ms = sampler.download_ms();
    d.delivered_at = t + d.download_ms / 1000.0;
  }
  return d;
}

void EmulatorConfig::validate() const
{
  latency.validate();
  processing.validate();
  if (module_capacity <= 0) {
    throw ConfigError("cloud.module_capacity", "must be positive");
  }
  if (!(stream_delay >= 0.0)) {
    throw ConfigError("cloud.stream_delay", "must be non-negative");
  }
  if (!(poll_phase > stream_delay)) {
    throw ConfigError("cloud.poll_phase", "must come after the stream delay");
  }
  if (!(advisory_ttl > 0.0)) {
    throw ConfigError("cloud.advisory_ttl", "must be positive");
  }
  for (const auto & o : outages) {
    if (o.store != "trajectory" && o.store != "advisory" && o.store != "distance_history") {
      throw ConfigError("cloud.outages.store", "unknown store '" + o.store + "'");
    }
    if (!(o.to > o.from)) {
      throw ConfigError("cloud.outages", "window must end after it starts");
    }
  }
}

CloudEmulator::CloudEmulator(
  EmulatorConfig config, const RoadwaySpec & roadway, const std::vector<SignalTimingPlan> & plans,
  const VehicleCapabilities & caps, double dt)
: config_(std::move(config)),
  roadway_(roadway),
  plans_(plans),
  sampler_(config_.latency),
  trajectory_("trajectory", config_.outages),
  advisory_("advisory", config_.outages)
{
  config_.validate();
  if (!(dt > 0.0) || config_.poll_phase >= dt) {
    throw ConfigError("dt", "must be positive and longer than the poll phase");
  }
  if (plans_.size() != roadway_.stop_lines.size()) {
    throw ConfigError("signals", "one timing plan per stop line is required");
  }
  for (std::size_t k = 0; k < plans_.size(); ++k) {
    distance_history_.emplace_back("distance_history_" + std::to_string(k), config_.outages);
  }
  context_.caps = caps;
  context_.mpc = config_.mpc;
  context_.processing = config_.processing;
  context_.processing_overhead_ms = config_.latency.processing_overhead_ms;
  context_.module_capacity = config_.module_capacity;
  context_.dt = dt;
}

std::map<int, Delivery> CloudEmulator::tick(const std::vector<BsmRecord> & bsms, double t)
{
  // Rebind per call: the emulator may have been moved since construction.
  context_.roadway = &roadway_;
  context_.plans = &plans_;

  upload_bsms(bsms, trajectory_, sampler_, t);

  const double trigger_time = t + config_.stream_delay;
  for (std::size_t k = 0; k < plans_.size(); ++k) {
    const auto id = static_cast<int>(k);
    const TriggerEvent trigger = tick_stream(id, trigger_time, plans_[k]);
    ClusterResult r =
      run_cluster(trigger, ClusterStores{&trajectory_, &distance_history_[k], &advisory_}, context_);
    if (r.skipped) {
      faults_.push_back(FaultEvent{trigger_time, id, r.skip_reason});
    }
    clusters_.push_back(std::move(r));
  }

  std::map<int, Delivery> out;
  const double poll_time = t + config_.poll_phase;
  if (!advisory_.available(poll_time) && !bsms.empty()) {
    faults_.push_back(FaultEvent{poll_time, -1, "advisory store unavailable for polling"});
  }
  for (const auto & bsm : bsms) {
    Download d = download_advisory(bsm.id, advisory_, sampler_, poll_time);
    if (!d.advisory) {
      continue;
    }
    const StoredAdvisory & a = *d.advisory;
    if (poll_time - a.advisory.generated_at > config_.advisory_ttl) {
      continue;
    }
    const auto last = last_delivered_.find(bsm.id);
    if (last != last_delivered_.end() && last->second >= a.advisory.generated_at) {
      continue;
    }
    last_delivered_[bsm.id] = a.advisory.generated_at;
    Delivery del;
    del.advisory = a.advisory;
    del.bsm_time = a.bsm_time;
    del.bsm_speed = a.bsm_speed;
    del.latency.t = d.delivered_at;
    del.latency.cv_id = bsm.id;
    del.latency.upload_ms = a.upload_ms;
    del.latency.processing_ms = a.processing_ms;
    del.latency.download_ms = d.download_ms;
    del.latency.end_to_end_ms = end_to_end(del.latency);
    del.latency.staleness_ms = (d.delivered_at - a.advisory.generated_at) * 1000.0;
    out.emplace(bsm.id, del);
  }
  return out;
}

}  // namespace glosa

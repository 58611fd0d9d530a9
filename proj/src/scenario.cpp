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

#include "glosa/scenario.hpp"

#include "glosa/error.hpp"
#include "glosa/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#ifndef GLOSA_VERSION_STRING
#define GLOSA_VERSION_STRING "0.0.0"
#endif

namespace glosa
{

std::string_view to_string(RunMode mode)
{
  return mode == RunMode::Baseline ? "baseline" : "advised";
}

std::optional<RunMode> parse_mode(std::string_view text)
{
  if (text == "baseline") {
    return RunMode::Baseline;
  }
  if (text == "advised") {
    return RunMode::Advised;
  }
  return std::nullopt;
}

namespace
{

class Fnv1a
{
public:
  void add(std::uint64_t v)
  {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (8 * i)) & 0xffU;
      h_ *= 0x100000001b3ULL;
    }
  }
  std::string hex() const
  {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string arrival_hash(const std::vector<Arrival> & arrivals)
{
  Fnv1a h;
  for (const auto & a : arrivals) {
    h.add(static_cast<std::uint64_t>(a.id));
    h.add(static_cast<std::uint64_t>(a.lane));
    h.add(std::bit_cast<std::uint64_t>(a.time));
  }
  return h.hex();
}

std::vector<Arrival> arrivals_for(const ScenarioConfig & config)
{
  TrafficDemand demand = config.demand;
  demand.start_time = config.warm_up;
  return spawn_traffic(demand, config.roadway.lanes_per_direction);
}

RunOutputs run_scenario(const ScenarioConfig & config, RunMode mode)
{
  config.validate();
  RunOutputs out;
  out.config = config;
  out.mode = mode;
  const auto arrivals = arrivals_for(config);
  out.arrival_hash = arrival_hash(arrivals);

  World world(config.roadway, config.signals, config.caps, config.car_following, arrivals, 0.0);
  std::optional<CloudEmulator> cloud;
  if (mode == RunMode::Advised) {
    EmulatorConfig ec = config.cloud;
    ec.latency.seed = config.latency_seed.value_or(config.demand.seed);
    cloud.emplace(ec, config.roadway, config.signals, config.caps, config.dt);
  }

  const auto ticks = static_cast<std::size_t>(std::llround(config.duration / config.dt));
  // Deliveries made during one tick are applied from the next tick on.
  std::map<int, Delivery> pending;
  for (std::size_t k = 0; k <= ticks; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    auto states = world.states();
    std::sort(states.begin(), states.end(), [](const auto & a, const auto & b) { return a.id < b.id; });
    std::map<int, SpeedAdvisory> apply;
    for (const auto & s : states) {
      TrajectoryRow row{t, s.id, s.lane, s.x, s.speed, s.gap, std::nullopt};
      const auto found = pending.find(s.id);
      if (found != pending.end() && s.x < config.roadway.length && found->second.latency.t <= t) {
        const Delivery & d = found->second;
        row.advised_speed = d.advisory.advised_speed;
        apply.emplace(s.id, d.advisory);
        out.audit.push_back(AuditEntry{
          t, s.id, d.advisory.signal_id, d.advisory.role, d.advisory.advised_speed, d.bsm_time,
          d.bsm_speed, d.advisory.generated_at, d.latency.t});
      }
      out.trajectory.push_back(row);
    }
    out.stats.applied += apply.size();
    if (k == ticks) {
      break;
    }
    pending.clear();
    if (cloud) {
      pending = cloud->tick(world.bsm_snapshot(), t);
      for (const auto & [id, d] : pending) {
        (void)id;
        out.latency.push_back(d.latency);
      }
      world.step_advised(apply, config.dt);
    } else {
      world.step_baseline(config.dt);
    }
    ++out.stats.ticks;
  }

  out.stats.deliveries = out.latency.size();
  if (cloud) {
    double busy_sum = 0.0;
    for (const auto & c : cloud->cluster_log()) {
      ++out.stats.cluster_runs;
      if (c.skipped) {
        ++out.stats.skipped_clusters;
        continue;
      }
      out.stats.case1_platoons += c.case1_platoons;
      out.stats.case2_platoons += c.case2_platoons;
      out.stats.optimal_solves += c.optimal_solves;
      out.stats.softened_solves += c.softened_solves;
      out.stats.max_processing_ms = std::max(out.stats.max_processing_ms, c.processing_ms);
      out.stats.module_count += c.modules.size();
      for (const auto & m : c.modules) {
        out.stats.max_module_members = std::max(out.stats.max_module_members, m.members.size());
      }
      if (!c.read_set.empty()) {
        ++out.stats.busy_clusters;
        busy_sum += c.processing_ms;
        out.busy_processing_ms.push_back(c.processing_ms);
      }
    }
    out.stats.mean_busy_processing_ms =
      out.stats.busy_clusters > 0 ? busy_sum / static_cast<double>(out.stats.busy_clusters) : 0.0;
    out.faults = cloud->faults();
    out.stats.faults = out.faults.size();
  }
  return out;
}

LatencySummary summarize_latency(const std::vector<LatencyRecord> & records)
{
  if (records.empty()) {
    throw MismatchError("advised run produced no latency records");
  }
  LatencySummary s;
  s.count = records.size();
  std::vector<double> e2e;
  e2e.reserve(records.size());
  std::size_t over = 0;
  for (const auto & r : records) {
    e2e.push_back(r.end_to_end_ms);
    s.mean_upload_ms += r.upload_ms;
    s.mean_processing_ms += r.processing_ms;
    s.mean_download_ms += r.download_ms;
    s.mean_staleness_ms += r.staleness_ms;
    over += r.end_to_end_ms > 1000.0 ? 1 : 0;
  }
  const auto n = static_cast<double>(records.size());
  s.mean_ms = std::accumulate(e2e.begin(), e2e.end(), 0.0) / n;
  s.mean_upload_ms /= n;
  s.mean_processing_ms /= n;
  s.mean_download_ms /= n;
  s.mean_staleness_ms /= n;
  s.median_ms = quantile(e2e, 0.5);
  s.p95_ms = quantile(e2e, 0.95);
  s.p99_ms = quantile(e2e, 0.99);
  s.max_ms = *std::max_element(e2e.begin(), e2e.end());
  s.fraction_over_1000ms = static_cast<double>(over) / n;
  return s;
}

Comparison compare(const RunOutputs & baseline, const RunOutputs & advised)
{
  if (baseline.mode != RunMode::Baseline || advised.mode != RunMode::Advised) {
    throw MismatchError("compare needs one baseline and one advised run");
  }
  if (baseline.config.demand.seed != advised.config.demand.seed) {
    throw MismatchError("compare: runs use different demand seeds");
  }
  if (baseline.arrival_hash != advised.arrival_hash) {
    throw MismatchError("compare: runs saw different arrival schedules");
  }
  Comparison c;
  c.density = std::string(to_string(advised.config.demand.density));
  c.seed = advised.config.demand.seed;
  c.config_hash = config_hash(advised.config);
  c.moe = moe_report(
    baseline.trajectory, advised.trajectory, advised.config.roadway.length, advised.config.metrics,
    c.density);
  c.latency = summarize_latency(advised.latency);
  c.advised_stats = advised.stats;
  return c;
}

namespace
{

using nlohmann::json;

json optional_number(const std::optional<double> & v) { return v ? json(*v) : json(nullptr); }

json moe_json(const RunMoe & m)
{
  return json{{"vehicles", m.vehicles},
              {"exited", m.exited},
              {"mean_stopped_delay_s", m.mean_stopped_delay},
              {"mean_travel_time_s", m.mean_travel_time},
              {"total_tit_s", m.total_tit}};
}

json latency_json(const LatencySummary & s)
{
  return json{{"count", s.count},
              {"mean_ms", s.mean_ms},
              {"median_ms", s.median_ms},
              {"p95_ms", s.p95_ms},
              {"p99_ms", s.p99_ms},
              {"max_ms", s.max_ms},
              {"fraction_over_1000ms", s.fraction_over_1000ms},
              {"mean_upload_ms", s.mean_upload_ms},
              {"mean_processing_ms", s.mean_processing_ms},
              {"mean_download_ms", s.mean_download_ms},
              {"mean_staleness_ms", s.mean_staleness_ms}};
}

json stats_json(const RunStats & s)
{
  return json{{"ticks", s.ticks},
              {"cluster_runs", s.cluster_runs},
              {"skipped_clusters", s.skipped_clusters},
              {"busy_clusters", s.busy_clusters},
              {"mean_busy_processing_ms", s.mean_busy_processing_ms},
              {"max_processing_ms", s.max_processing_ms},
              {"module_count", s.module_count},
              {"max_module_members", s.max_module_members},
              {"deliveries", s.deliveries},
              {"applied", s.applied},
              {"case1_platoons", s.case1_platoons},
              {"case2_platoons", s.case2_platoons},
              {"optimal_solves", s.optimal_solves},
              {"softened_solves", s.softened_solves},
              {"faults", s.faults}};
}

json comparison_object(const Comparison & c)
{
  return json{{"density", c.density},
              {"seed", c.seed},
              {"config_hash", c.config_hash},
              {"baseline", moe_json(c.moe.baseline)},
              {"advised", moe_json(c.moe.advised)},
              {"reduction_pct",
               {{"stopped_delay", optional_number(c.moe.stopped_delay_reduction)},
                {"travel_time", optional_number(c.moe.travel_time_reduction)},
                {"tit", optional_number(c.moe.tit_reduction)}}},
              {"latency", latency_json(c.latency)},
              {"advised_run", stats_json(c.advised_stats)}};
}

std::string csv_number(const std::optional<double> & v) { return v ? format_number(*v) : "n/a"; }

}  // namespace

std::string run_manifest_json(const RunOutputs & run)
{
  json files = json::array({"trajectory.csv"});
  if (run.mode == RunMode::Advised) {
    files.push_back("latency.csv");
  }
  const json m{
    {"tool", "glosa"},
    {"version", GLOSA_VERSION_STRING},
    {"mode", std::string(to_string(run.mode))},
    {"density", std::string(to_string(run.config.demand.density))},
    {"seed", run.config.demand.seed},
    {"latency_seed", run.config.latency_seed.value_or(run.config.demand.seed)},
    {"config_hash", config_hash(run.config)},
    {"arrival_hash", run.arrival_hash},
    {"files", files},
    {"stats", stats_json(run.stats)},
    {"config_yaml", to_yaml(run.config)}};
  return m.dump(2) + "\n";
}

void write_run(const RunOutputs & run, const std::filesystem::path & dir)
{
  write_file(dir / "trajectory.csv", trajectory_csv(run.trajectory));
  if (run.mode == RunMode::Advised) {
    write_file(dir / "latency.csv", latency_csv(run.latency));
  }
  write_file(dir / "manifest.json", run_manifest_json(run));
}

RunOutputs load_run(const std::filesystem::path & dir)
{
  RunOutputs run;
  json manifest;
  try {
    manifest = json::parse(read_file(dir / "manifest.json"));
    const auto mode = parse_mode(manifest.at("mode").get<std::string>());
    if (!mode) {
      throw IoError("manifest has an unknown mode");
    }
    run.mode = *mode;
    run.arrival_hash = manifest.at("arrival_hash").get<std::string>();
    run.config = parse_config(manifest.at("config_yaml").get<std::string>());
    const auto & st = manifest.at("stats");
    run.stats.ticks = st.at("ticks").get<std::size_t>();
    run.stats.cluster_runs = st.at("cluster_runs").get<std::size_t>();
    run.stats.skipped_clusters = st.at("skipped_clusters").get<std::size_t>();
    run.stats.busy_clusters = st.at("busy_clusters").get<std::size_t>();
    run.stats.mean_busy_processing_ms = st.at("mean_busy_processing_ms").get<double>();
    run.stats.max_processing_ms = st.at("max_processing_ms").get<double>();
    run.stats.module_count = st.at("module_count").get<std::size_t>();
    run.stats.max_module_members = st.at("max_module_members").get<std::size_t>();
    run.stats.deliveries = st.at("deliveries").get<std::size_t>();
    run.stats.applied = st.at("applied").get<std::size_t>();
    run.stats.case1_platoons = st.at("case1_platoons").get<int>();
    run.stats.case2_platoons = st.at("case2_platoons").get<int>();
    run.stats.optimal_solves = st.at("optimal_solves").get<int>();
    run.stats.softened_solves = st.at("softened_solves").get<int>();
    run.stats.faults = st.at("faults").get<std::size_t>();
  } catch (const json::exception & e) {
    throw IoError("bad manifest in " + dir.string() + ": " + e.what());
  }
  run.trajectory = parse_trajectory_csv(read_file(dir / "trajectory.csv"));
  if (run.mode == RunMode::Advised) {
    run.latency = parse_latency_csv(read_file(dir / "latency.csv"));
  }
  return run;
}

std::string comparison_json(const Comparison & c) { return comparison_object(c).dump(2) + "\n"; }

std::string comparison_csv(const std::vector<Comparison> & rows)
{
  std::string out =
    "density,seed,baseline_stopped_delay_s,advised_stopped_delay_s,stopped_delay_reduction_pct,"
    "baseline_travel_time_s,advised_travel_time_s,travel_time_reduction_pct,baseline_tit_s,"
    "advised_tit_s,tit_reduction_pct,baseline_exited,advised_exited,latency_count,latency_mean_ms,"
    "latency_p95_ms,latency_max_ms,fraction_over_1000ms,mean_busy_processing_ms\n";
  for (const auto & c : rows) {
    const auto & m = c.moe;
    out += c.density + ',' + std::to_string(c.seed) + ',' +
           format_number(m.baseline.mean_stopped_delay) + ',' +
           format_number(m.advised.mean_stopped_delay) + ',' + csv_number(m.stopped_delay_reduction) +
           ',' + format_number(m.baseline.mean_travel_time) + ',' +
           format_number(m.advised.mean_travel_time) + ',' + csv_number(m.travel_time_reduction) +
           ',' + format_number(m.baseline.total_tit) + ',' + format_number(m.advised.total_tit) + ',' +
           csv_number(m.tit_reduction) + ',' + std::to_string(m.baseline.exited) + ',' +
           std::to_string(m.advised.exited) + ',' + std::to_string(c.latency.count) + ',' +
           format_number(c.latency.mean_ms) + ',' + format_number(c.latency.p95_ms) + ',' +
           format_number(c.latency.max_ms) + ',' + format_number(c.latency.fraction_over_1000ms) +
           ',' + format_number(c.advised_stats.mean_busy_processing_ms) + '\n';
  }
  return out;
}

std::string plot_data_csv(const std::vector<RunOutputs> & runs)
{
  // (metric, density, mode) -> samples, in first-seen order of density.
  std::vector<std::string> densities;
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> samples;
  for (const auto & r : runs) {
    const std::string d(to_string(r.config.demand.density));
    if (std::find(densities.begin(), densities.end(), d) == densities.end()) {
      densities.push_back(d);
    }
    const std::string mode(to_string(r.mode));
    for (const auto & v : per_vehicle(r.trajectory, r.config.roadway.length, r.config.metrics)) {
      samples[{"stopped_delay_s", d, mode}].push_back(v.stopped_delay);
      if (v.travel_time) {
        samples[{"travel_time_s", d, mode}].push_back(*v.travel_time);
      }
    }
    for (const auto & l : r.latency) {
      samples[{"end_to_end_ms", d, mode}].push_back(l.end_to_end_ms);
    }
    for (const double p : r.busy_processing_ms) {
      samples[{"processing_ms", d, mode}].push_back(p);
    }
  }
  std::string out = "metric,density,mode,count,min,q1,median,q3,max,mean\n";
  for (const auto * metric : {"stopped_delay_s", "travel_time_s", "end_to_end_ms", "processing_ms"}) {
    for (const auto & d : densities) {
      for (const auto * mode : {"baseline", "advised"}) {
        const auto it = samples.find({metric, d, mode});
        if (it == samples.end()) {
          continue;
        }
        const BoxStats b = box_stats(it->second);
        out += std::string(metric) + ',' + d + ',' + mode + ',' + std::to_string(b.count) + ',' +
               format_number(b.min) + ',' + format_number(b.q1) + ',' + format_number(b.median) +
               ',' + format_number(b.q3) + ',' + format_number(b.max) + ',' + format_number(b.mean) +
               '\n';
      }
    }
  }
  return out;
}

namespace
{

DensitySummary summarize_density(
  const std::string & density, const std::vector<const Comparison *> & cells,
  const std::vector<const RunOutputs *> & advised_runs)
{
  DensitySummary s;
  s.density = density;
  s.cells = cells.size();
  double base_delay = 0.0;
  double adv_delay = 0.0;
  double base_tt = 0.0;
  double adv_tt = 0.0;
  for (const auto * c : cells) {
    const auto & b = c->moe.baseline;
    const auto & a = c->moe.advised;
    s.baseline.vehicles += b.vehicles;
    s.advised.vehicles += a.vehicles;
    s.baseline.exited += b.exited;
    s.advised.exited += a.exited;
    base_delay += b.mean_stopped_delay * b.vehicles;
    adv_delay += a.mean_stopped_delay * a.vehicles;
    base_tt += b.mean_travel_time * b.exited;
    adv_tt += a.mean_travel_time * a.exited;
    s.baseline.total_tit += b.total_tit / static_cast<double>(cells.size());
    s.advised.total_tit += a.total_tit / static_cast<double>(cells.size());
  }
  if (s.baseline.vehicles > 0) {
    s.baseline.mean_stopped_delay = base_delay / s.baseline.vehicles;
  }
  if (s.advised.vehicles > 0) {
    s.advised.mean_stopped_delay = adv_delay / s.advised.vehicles;
  }
  if (s.baseline.exited > 0) {
    s.baseline.mean_travel_time = base_tt / s.baseline.exited;
  }
  if (s.advised.exited > 0) {
    s.advised.mean_travel_time = adv_tt / s.advised.exited;
  }
  s.stopped_delay_reduction =
    percent_reduction(s.baseline.mean_stopped_delay, s.advised.mean_stopped_delay);
  s.travel_time_reduction = percent_reduction(s.baseline.mean_travel_time, s.advised.mean_travel_time);
  s.tit_reduction = percent_reduction(s.baseline.total_tit, s.advised.total_tit);

  std::vector<LatencyRecord> pooled;
  std::vector<double> busy;
  for (const auto * r : advised_runs) {
    pooled.insert(pooled.end(), r->latency.begin(), r->latency.end());
    busy.insert(busy.end(), r->busy_processing_ms.begin(), r->busy_processing_ms.end());
  }
  if (!pooled.empty()) {
    s.latency = summarize_latency(pooled);
  }
  if (!busy.empty()) {
    s.mean_busy_processing_ms =
      std::accumulate(busy.begin(), busy.end(), 0.0) / static_cast<double>(busy.size());
  }
  return s;
}

std::string summary_csv(const std::vector<DensitySummary> & rows)
{
  std::string out =
    "density,cells,baseline_stopped_delay_s,advised_stopped_delay_s,stopped_delay_reduction_pct,"
    "baseline_travel_time_s,advised_travel_time_s,travel_time_reduction_pct,baseline_tit_s,"
    "advised_tit_s,tit_reduction_pct\n";
  for (const auto & s : rows) {
    out += s.density + ',' + std::to_string(s.cells) + ',' +
           format_number(s.baseline.mean_stopped_delay) + ',' +
           format_number(s.advised.mean_stopped_delay) + ',' + csv_number(s.stopped_delay_reduction) +
           ',' + format_number(s.baseline.mean_travel_time) + ',' +
           format_number(s.advised.mean_travel_time) + ',' + csv_number(s.travel_time_reduction) +
           ',' + format_number(s.baseline.total_tit) + ',' + format_number(s.advised.total_tit) +
           ',' + csv_number(s.tit_reduction) + '\n';
  }
  return out;
}

std::string latency_summary_csv(const std::vector<DensitySummary> & rows)
{
  std::string out =
    "density,deliveries,mean_upload_ms,mean_processing_ms,mean_download_ms,mean_end_to_end_ms,"
    "median_end_to_end_ms,p95_end_to_end_ms,max_end_to_end_ms,fraction_over_1000ms,"
    "mean_cluster_processing_ms\n";
  for (const auto & s : rows) {
    const auto & l = s.latency;
    out += s.density + ',' + std::to_string(l.count) + ',' + format_number(l.mean_upload_ms) + ',' +
           format_number(l.mean_processing_ms) + ',' + format_number(l.mean_download_ms) + ',' +
           format_number(l.mean_ms) + ',' + format_number(l.median_ms) + ',' +
           format_number(l.p95_ms) + ',' + format_number(l.max_ms) + ',' +
           format_number(l.fraction_over_1000ms) + ',' + format_number(s.mean_busy_processing_ms) +
           '\n';
  }
  return out;
}

json density_json(const DensitySummary & s)
{
  return json{{"density", s.density},
              {"cells", s.cells},
              {"baseline", moe_json(s.baseline)},
              {"advised", moe_json(s.advised)},
              {"reduction_pct",
               {{"stopped_delay", optional_number(s.stopped_delay_reduction)},
                {"travel_time", optional_number(s.travel_time_reduction)},
                {"tit", optional_number(s.tit_reduction)}}},
              {"latency", latency_json(s.latency)},
              {"mean_cluster_processing_ms", s.mean_busy_processing_ms}};
}

}  // namespace

SweepResult sweep(const ScenarioConfig & config, const std::filesystem::path & out_dir, int jobs)
{
  config.validate();
  const SweepSpec spec = config.sweep.value_or(SweepSpec{{config.demand.density}, {config.demand.seed}});
  struct Cell
  {
    DensityClass density;
    std::uint64_t seed;
    std::optional<Comparison> result;
    std::optional<RunOutputs> baseline;
    std::optional<RunOutputs> advised;
    std::string error;
  };
  std::vector<Cell> cells;
  for (const auto d : spec.densities) {
    for (const auto s : spec.seeds) {
      cells.push_back(Cell{d, s, std::nullopt, std::nullopt, std::nullopt, {}});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      Cell & cell = cells[i];
      const std::string name =
        std::string(to_string(cell.density)) + "_seed" + std::to_string(cell.seed);
      try {
        ScenarioConfig c = config;
        c.sweep.reset();
        c.set_density(cell.density);
        c.set_seed(cell.seed);
        c.output_dir = (out_dir / "cells" / name).string();
        RunOutputs base = run_scenario(c, RunMode::Baseline);
        RunOutputs adv = run_scenario(c, RunMode::Advised);
        write_run(base, out_dir / "cells" / name / "baseline");
        write_run(adv, out_dir / "cells" / name / "advised");
        Comparison cmp = compare(base, adv);
        write_file(out_dir / "cells" / name / "report.json", comparison_json(cmp));
        cell.result = std::move(cmp);
        cell.baseline = std::move(base);
        cell.advised = std::move(adv);
      } catch (const std::exception & e) {
        cell.error = name + ": " + e.what();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::clamp<int>(jobs, 1, 64));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < std::min(threads, cells.size()); ++i) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto & th : pool) {
    th.join();
  }

  SweepResult result;
  std::vector<RunOutputs> runs;
  for (auto & cell : cells) {
    if (cell.result) {
      result.cells.push_back(*cell.result);
      runs.push_back(std::move(*cell.baseline));
      runs.push_back(std::move(*cell.advised));
    } else {
      result.failures.push_back(cell.error);
    }
  }
  for (const auto d : spec.densities) {
    const std::string name(to_string(d));
    std::vector<const Comparison *> group;
    std::vector<const RunOutputs *> advised;
    for (const auto & c : result.cells) {
      if (c.density == name) {
        group.push_back(&c);
      }
    }
    for (const auto & r : runs) {
      if (r.mode == RunMode::Advised && r.config.demand.density == d) {
        advised.push_back(&r);
      }
    }
    if (!group.empty()) {
      result.summary.push_back(summarize_density(name, group, advised));
    }
  }

  json report{{"tool", "glosa"},
              {"version", GLOSA_VERSION_STRING},
              {"config_hash", config_hash(config)},
              {"cells", json::array()},
              {"summary", json::array()},
              {"failures", result.failures}};
  for (const auto & c : result.cells) {
    report["cells"].push_back(comparison_object(c));
  }
  for (const auto & s : result.summary) {
    report["summary"].push_back(density_json(s));
  }
  write_file(out_dir / "report.json", report.dump(2) + "\n");
  write_file(out_dir / "report.csv", comparison_csv(result.cells));
  write_file(out_dir / "summary.csv", summary_csv(result.summary));
  write_file(out_dir / "latency_summary.csv", latency_summary_csv(result.summary));
  write_file(out_dir / "plot_data.csv", plot_data_csv(runs));
  if (!result.failures.empty()) {
    std::string text;
    for (const auto & f : result.failures) {
      text += f + "\n";
    }
    write_file(out_dir / "failures.txt", text);
  }
  return result;
}

}  // namespace glosa

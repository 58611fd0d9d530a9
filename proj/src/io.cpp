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

#include "glosa/io.hpp"

#include "glosa/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace glosa
{

std::string format_number(double value)
{
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  if (value == 0.0) {
    return "0";  // folds -0 so files do not depend on the sign of zero
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, std::string_view what)
{
  if (text == "inf") {
    return kInfinity;
  }
  if (text == "-inf") {
    return -kInfinity;
  }
  if (text == "nan") {
    return std::nan("");
  }
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) {
    throw IoError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return v;
}

namespace
{

int parse_int(std::string_view text, std::string_view what)
{
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) {
    throw IoError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, std::size_t expected)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  if (out.size() != expected) {
    throw IoError("expected " + std::to_string(expected) + " fields in '" + std::string(line) + "'");
  }
  return out;
}

template <class F>
void for_each_data_line(const std::string & text, std::string_view header, F && f)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw IoError("unexpected CSV header, wanted '" + std::string(header) + "'");
  }
  while (std::getline(in, line)) {
    if (!line.empty()) {
      f(std::string_view(line));
    }
  }
}

constexpr std::string_view kTrajectoryHeader = "t,id,lane,x,speed,gap,advised_speed";
constexpr std::string_view kLatencyHeader =
  "t,cv_id,upload_ms,processing_ms,download_ms,end_to_end_ms,staleness_ms";

}  // namespace

std::string trajectory_csv(const std::vector<TrajectoryRow> & rows)
{
  std::string out(kTrajectoryHeader);
  out += '\n';
  for (const auto & r : rows) {
    out += format_number(r.t) + ',' + std::to_string(r.id) + ',' + std::to_string(r.lane) + ',' +
           format_number(r.x) + ',' + format_number(r.speed) + ',' + format_number(r.gap) + ',' +
           (r.advised_speed ? format_number(*r.advised_speed) : std::string()) + '\n';
  }
  return out;
}

std::vector<TrajectoryRow> parse_trajectory_csv(const std::string & text)
{
  std::vector<TrajectoryRow> rows;
  for_each_data_line(text, kTrajectoryHeader, [&](std::string_view line) {
    const auto f = split(line, 7);
    TrajectoryRow r;
    r.t = parse_number(f[0], "t");
    r.id = parse_int(f[1], "id");
    r.lane = parse_int(f[2], "lane");
    r.x = parse_number(f[3], "x");
    r.speed = parse_number(f[4], "speed");
    r.gap = parse_number(f[5], "gap");
    if (!f[6].empty()) {
      r.advised_speed = parse_number(f[6], "advised_speed");
    }
    rows.push_back(r);
  });
  return rows;
}

std::string latency_csv(const std::vector<LatencyRecord> & records)
{
  std::string out(kLatencyHeader);
  out += '\n';
  for (const auto & r : records) {
    out += format_number(r.t) + ',' + std::to_string(r.cv_id) + ',' + format_number(r.upload_ms) +
           ',' + format_number(r.processing_ms) + ',' + format_number(r.download_ms) + ',' +
           format_number(r.end_to_end_ms) + ',' + format_number(r.staleness_ms) + '\n';
  }
  return out;
}

std::vector<LatencyRecord> parse_latency_csv(const std::string & text)
{
  std::vector<LatencyRecord> records;
  for_each_data_line(text, kLatencyHeader, [&](std::string_view line) {
    const auto f = split(line, 7);
    LatencyRecord r;
    r.t = parse_number(f[0], "t");
    r.cv_id = parse_int(f[1], "cv_id");
    r.upload_ms = parse_number(f[2], "upload_ms");
    r.processing_ms = parse_number(f[3], "processing_ms");
    r.download_ms = parse_number(f[4], "download_ms");
    r.end_to_end_ms = parse_number(f[5], "end_to_end_ms");
    r.staleness_ms = parse_number(f[6], "staleness_ms");
    records.push_back(r);
  });
  return records;
}

std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path & path, std::string_view content)
{
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

}  // namespace glosa

// Copyright 2026 The Shuttle Nav Authors
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

#include "shuttle/sim/log.hpp"

#include <openssl/evp.h>

#include <array>
#include <sstream>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace shuttle::sim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json tick_json(const TickRecord& r) {
  ordered_json j;
  j["type"] = "tick";
  j["t"] = r.t;
  j["x"] = r.x;
  j["y"] = r.y;
  j["theta"] = r.theta;
  j["v"] = r.v;
  j["steer"] = r.steer;
  j["accel_cmd"] = r.accel_cmd;
  j["steer_cmd"] = r.steer_cmd;
  j["route_s"] = r.route_s;
  j["d_t"] = r.d_t;
  j["truncated"] = r.truncated;
  j["gate"] = r.gate;
  j["speed_limit"] = r.speed_limit;
  j["localization_error"] = r.localization_error;
  j["pedestrian_clearance"] =
      r.pedestrian_clearance ? ordered_json(*r.pedestrian_clearance) : ordered_json(nullptr);
  j["emergency"] = r.emergency;
  j["phase"] = r.phase;
  j["announcements"] = r.announcements;
  return j;
}

TickRecord tick_from(const json& j) {
  TickRecord r;
  r.t = j.at("t").get<double>();
  r.x = j.at("x").get<double>();
  r.y = j.at("y").get<double>();
  r.theta = j.at("theta").get<double>();
  r.v = j.at("v").get<double>();
  r.steer = j.at("steer").get<double>();
  r.accel_cmd = j.at("accel_cmd").get<double>();
  r.steer_cmd = j.at("steer_cmd").get<double>();
  r.route_s = j.at("route_s").get<double>();
  r.d_t = j.at("d_t").get<double>();
  r.truncated = j.at("truncated").get<bool>();
  r.gate = j.at("gate").get<std::string>();
  r.speed_limit = j.at("speed_limit").get<double>();
  r.localization_error = j.at("localization_error").get<double>();
  if (!j.at("pedestrian_clearance").is_null()) {
    r.pedestrian_clearance = j.at("pedestrian_clearance").get<double>();
  }
  r.emergency = j.at("emergency").get<bool>();
  r.phase = j.at("phase").get<std::string>();
  r.announcements = j.at("announcements").get<std::vector<std::string>>();
  return r;
}

}  // namespace

std::string_view to_string(TerminalStatus status) {
  switch (status) {
    case TerminalStatus::kGoalReached:
      return "GoalReached";
    case TerminalStatus::kTimeout:
      return "Timeout";
    case TerminalStatus::kSafetyStop:
      return "SafetyStop";
  }
  return "Timeout";
}

TerminalStatus terminal_status_from_string(std::string_view name) {
  if (name == "GoalReached") return TerminalStatus::kGoalReached;
  if (name == "Timeout") return TerminalStatus::kTimeout;
  if (name == "SafetyStop") return TerminalStatus::kSafetyStop;
  throw std::runtime_error("unknown terminal status '" + std::string(name) + "'");
}

std::string SimLog::to_jsonl() const {
  std::string out;
  ordered_json header;
  header["type"] = "header";
  header["scenario"] = scenario;
  header["seed"] = seed;
  header["control_dt"] = control_dt;
  out += header.dump() + "\n";
  for (const auto& r : ticks) out += tick_json(r).dump() + "\n";
  for (const auto& e : events) {
    ordered_json j;
    j["type"] = "event";
    j["t"] = e.t;
    j["event"] = e.type;
    j["detail"] = e.detail;
    out += j.dump() + "\n";
  }
  ordered_json end;
  end["type"] = "end";
  end["status"] = std::string(to_string(status));
  end["reason"] = reason;
  out += end.dump() + "\n";
  return out;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

std::string SimLog::digest() const { return sha256_hex(to_jsonl()); }

SimLog parse_log(std::string_view text) {
  SimLog log;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_header = false;
  bool have_end = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        log.scenario = j.at("scenario").get<std::string>();
        log.seed = j.at("seed").get<std::uint64_t>();
        log.control_dt = j.at("control_dt").get<double>();
        have_header = true;
      } else if (type == "tick") {
        log.ticks.push_back(tick_from(j));
      } else if (type == "event") {
        log.events.push_back({j.at("t").get<double>(), j.at("event").get<std::string>(),
                              j.at("detail").get<std::string>()});
      } else if (type == "end") {
        log.status = terminal_status_from_string(j.at("status").get<std::string>());
        log.reason = j.at("reason").get<std::string>();
        have_end = true;
      } else {
        throw std::runtime_error("unknown record type '" + type + "'");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("log line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header || !have_end) throw std::runtime_error("log is missing header or end");
  if (log.ticks.empty()) throw std::runtime_error("log has no ticks");
  return log;
}

}  // namespace shuttle::sim

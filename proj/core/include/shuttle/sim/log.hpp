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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shuttle::sim {

enum class TerminalStatus { kGoalReached, kTimeout, kSafetyStop };

std::string_view to_string(TerminalStatus status);
TerminalStatus terminal_status_from_string(std::string_view name);

struct TickRecord {
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double theta{0.0};
  double v{0.0};
  double steer{0.0};
  double accel_cmd{0.0};
  double steer_cmd{0.0};
  double route_s{0.0};
  double d_t{0.0};
  bool truncated{false};  // pi_s
  std::string gate{"none"};
  double speed_limit{0.0};  // active limit at the ego position
  double localization_error{0.0};
  std::optional<double> pedestrian_clearance;
  bool emergency{false};
  std::string phase{"driving"};
  std::vector<std::string> announcements;

  bool operator==(const TickRecord&) const = default;
};

struct LogEvent {
  double t{0.0};
  std::string type;
  std::string detail;

  bool operator==(const LogEvent&) const = default;
};

// Event types counted as takeover proxies.
inline constexpr std::string_view kSolverFailureEvent = "solver_failure";
inline constexpr std::string_view kAllBlockedEvent = "all_blocked";
inline constexpr std::string_view kCollisionEvent = "collision";

struct SimLog {
  std::string scenario;
  std::uint64_t seed{0};
  double control_dt{0.1};
  std::vector<TickRecord> ticks;
  std::vector<LogEvent> events;
  TerminalStatus status{TerminalStatus::kTimeout};
  std::string reason;

  // One JSON record per line with a fixed field order: header, ticks,
  // events, terminal record.
  std::string to_jsonl() const;
  // Hex SHA-256 of to_jsonl().
  std::string digest() const;
  bool operator==(const SimLog&) const = default;
};

// Throws std::runtime_error on malformed or empty logs.
SimLog parse_log(std::string_view text);

std::string sha256_hex(std::string_view data);

}  // namespace shuttle::sim

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

#include <functional>
#include <optional>

#include "shuttle/sim/log.hpp"
#include "shuttle/sim/scenario.hpp"

namespace shuttle::sim {

// Everything one planning cycle saw and produced.
struct PlanRecord {
  double t{0.0};
  const behavior::ReferenceRoute* reference{nullptr};
  const motion::PlanningInput* input{nullptr};
  const motion::Trajectory* trajectory{nullptr};
  const motion::PlannerConfig* config{nullptr};
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  nlohmann::json config = nlohmann::json::object();  // applied after scenario overrides
  std::function<void(const PlanRecord&)> on_plan;
};

// Closed-loop run: sense, predict, behavior, motion (every plan_every
// ticks), MPC and vehicle substeps at the control period. Throws
// ScenarioError if no route to the first destination exists.
SimLog run_scenario(const Scenario& scenario, const RunOptions& options = {});

// Stack configuration a scenario runs with.
StackConfig effective_config(const Scenario& scenario, const RunOptions& options = {});

}  // namespace shuttle::sim

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

#include <vector>

#include "shuttle/motion/trajectory_planner.hpp"

namespace shuttle::control {

struct VehicleState {
  double x{0.0};
  double y{0.0};
  double theta{0.0};
  double v{0.0};
  double steer{0.0};  // applied front-wheel angle
};

struct ControlCommand {
  double accel{0.0};
  double steer{0.0};
  bool solver_failure{false};
};

struct VehicleParams {
  double wheelbase{2.5};
  double max_steer{0.6};
  double max_accel{2.0};
};

// Kinematic bicycle about the rear axle, one RK4 step with inputs held.
// Speed is clamped at zero; the vehicle never reverses.
VehicleState bicycle_step(const VehicleState& s, const ControlCommand& u, double dt,
                          const VehicleParams& vp = {});

struct MpcParams {
  int horizon{20};
  double dt{0.1};
  int linearizations{2};
  double q_lateral{10.0};
  double q_longitudinal{1.0};
  double q_heading{5.0};
  double q_speed{1.0};
  double r_accel{0.1};
  double r_steer{1.0};
  double r_accel_rate{1.0};
  double r_steer_rate{20.0};
  double max_steer_rate{0.05};  // per step
  double max_jerk{1.5};
  double emergency_jerk{10.0};
  // Braking is capped at creep_gain * v so speed decays smoothly into rest.
  double creep_gain{1.5};
};

struct ReferencePoint {
  VehicleState state;
  ControlCommand input;
};

// Reference over the horizon (entries 1..N) from a planned trajectory, with
// `t_offset` the time since the trajectory was planned.
std::vector<ReferencePoint> reference_from(const motion::Trajectory& traj, double t_offset,
                                           const MpcParams& p, const VehicleParams& vp = {});

double horizon_cost(const VehicleState& x0, const std::vector<ControlCommand>& inputs,
                    const std::vector<ReferencePoint>& ref, const ControlCommand& previous,
                    const MpcParams& p, const VehicleParams& vp = {});

struct MpcResult {
  ControlCommand command;
  std::vector<ControlCommand> inputs;
  std::vector<VehicleState> predicted;
  double cost{0.0};
};

// Linear time-varying MPC by successive linearization about the nominal
// rollout. On solver failure the command is a gentle brake with the previous
// steering held.
MpcResult mpc_track(const VehicleState& x0, const std::vector<ReferencePoint>& ref,
                    const ControlCommand& previous, bool emergency, const MpcParams& p = {},
                    const VehicleParams& vp = {});

}  // namespace shuttle::control

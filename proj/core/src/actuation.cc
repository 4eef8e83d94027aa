// Copyright 2026 The MIDAS Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "midas/actuation.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "midas/error.h"

namespace midas {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSnapDeg = 1e-9;

}  // namespace

ServoState Command(const ServoState& state, double target_deg, const ServoSpec& spec) {
  if (!(target_deg >= spec.theta_min && target_deg <= spec.theta_max)) {
    throw Error(ErrorCode::kOutOfRange,
                "servo target " + std::to_string(target_deg) + " outside [" +
                    std::to_string(spec.theta_min) + ", " +
                    std::to_string(spec.theta_max) + "]");
  }
  ServoState next = state;
  next.target_deg = target_deg;
  return next;
}

ServoState Step(const ServoState& state, double dt_s, const ServoSpec& spec) {
  if (!(dt_s > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "servo step requires dt_s > 0");
  }
  ServoState next = state;
  const double error = state.target_deg - state.theta_deg;
  const double max_move = spec.v_max_deg_s * dt_s;
  if (std::abs(error) <= max_move + kSnapDeg) {
    next.theta_deg = state.target_deg;
  } else {
    next.theta_deg += error > 0 ? max_move : -max_move;
  }
  next.theta_deg = std::clamp(next.theta_deg, spec.theta_min, spec.theta_max);
  return next;
}

double LinkagePosition(double theta_deg, const LinkageModel& model) {
  const double theta = theta_deg * kPi / 180.0;
  return 0.5 * model.stroke_mm * (1.0 - std::cos(theta));
}

FingerPose FingerOpenness(double displacement_mm, const LinkageModel& model,
                          IntentMode mode) {
  const double fraction = std::clamp(displacement_mm / model.stroke_mm, 0.0, 1.0);
  return FingerPose{mode == IntentMode::kExtension ? fraction : 1.0 - fraction};
}

std::optional<double> IntentToCommand(const IntentEvent& event, OffsetPolicy policy) {
  if (event.kind == IntentKind::kOnset) return 180.0;
  if (policy == OffsetPolicy::kHold) return std::nullopt;
  return 0.0;
}

}  // namespace midas

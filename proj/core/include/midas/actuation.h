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

#ifndef MIDAS_ACTUATION_H_
#define MIDAS_ACTUATION_H_

#include <optional>

#include "midas/signals.h"

namespace midas {

// MG-996R: 60 degrees per 0.17 s over a 0..180 degree sweep.
struct ServoSpec {
  double v_max_deg_s = 60.0 / 0.17;
  double theta_min = 0.0;
  double theta_max = 180.0;
};

struct ServoState {
  double theta_deg = 0.0;
  double target_deg = 0.0;

  friend bool operator==(const ServoState&, const ServoState&) = default;
};

// Sets the target. Throws kOutOfRange outside [theta_min, theta_max].
ServoState Command(const ServoState& state, double target_deg,
                   const ServoSpec& spec = {});

// Moves theta toward the target at no more than v_max * dt_s. A residual
// below 1e-9 degrees snaps onto the target so accumulated rounding cannot
// cost an extra tick.
ServoState Step(const ServoState& state, double dt_s, const ServoSpec& spec = {});

struct LinkageModel {
  double stroke_mm = 20.0;
};

// Cosine slider profile x = (stroke / 2) * (1 - cos theta); zero slope at both
// ends of the sweep.
double LinkagePosition(double theta_deg, const LinkageModel& model = {});

// One actuator drives the fore, middle, ring and little fingers together, so
// a single openness value describes all four. The thumb is not actuated.
struct FingerPose {
  double openness = 0.0;
};

// Extension mode opens a clenched hand as the shaft advances; flexion mode
// closes it. Displacements are clamped into [0, stroke].
FingerPose FingerOpenness(double displacement_mm, const LinkageModel& model,
                          IntentMode mode);

enum class OffsetPolicy { kReturnToRest, kHold };

// Onset drives to 180, Offset back to 0 (or no command under kHold). The
// rule is the same in both modes.
std::optional<double> IntentToCommand(const IntentEvent& event,
                                      OffsetPolicy policy = OffsetPolicy::kReturnToRest);

}  // namespace midas

#endif  // MIDAS_ACTUATION_H_

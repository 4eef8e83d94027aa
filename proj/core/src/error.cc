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

#include "midas/error.h"

#include <cmath>

#include "midas/rng.h"

namespace midas {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kEmptyTrace: return "EmptyTrace";
    case ErrorCode::kDegenerateCalibration: return "DegenerateCalibration";
    case ErrorCode::kUndetectableIntent: return "UndetectableIntent";
    case ErrorCode::kOverlappingGestures: return "OverlappingGestures";
    case ErrorCode::kPayloadTooLong: return "PayloadTooLong";
    case ErrorCode::kUnknownSource: return "UnknownSource";
    case ErrorCode::kUnknownDestination: return "UnknownDestination";
    case ErrorCode::kClockRegression: return "ClockRegression";
    case ErrorCode::kNonAlternating: return "NonAlternating";
    case ErrorCode::kStageNotRunning: return "StageNotRunning";
    case ErrorCode::kTimestampRegression: return "TimestampRegression";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kEmptyDomain: return "EmptyDomain";
    case ErrorCode::kInconsistentRow: return "InconsistentRow";
    case ErrorCode::kUnknownInstrument: return "UnknownInstrument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - U keeps the log argument in (0, 1].
  const double u1 = 1.0 - Uniform01();
  const double u2 = Uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace midas

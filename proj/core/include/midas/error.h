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

#ifndef MIDAS_ERROR_H_
#define MIDAS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace midas {

// Every failure the core library reports carries one of these codes so that
// callers (and the CLI's exit-code mapping) can branch without string
// matching.
enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kEmptyTrace,
  kDegenerateCalibration,
  kUndetectableIntent,
  kOverlappingGestures,
  kPayloadTooLong,
  kUnknownSource,
  kUnknownDestination,
  kClockRegression,
  kNonAlternating,
  kStageNotRunning,
  kTimestampRegression,
  kMalformedRecord,
  kEmptyDomain,
  kInconsistentRow,
  kUnknownInstrument,
  kParseError,
  kIoError,
  kConfigError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace midas

#endif  // MIDAS_ERROR_H_

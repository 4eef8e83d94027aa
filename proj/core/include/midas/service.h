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

#ifndef MIDAS_SERVICE_H_
#define MIDAS_SERVICE_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "midas/session.h"
#include "midas/signals.h"

namespace midas::service {

// Process exit codes for the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitIo = 3,
  kExitSimulation = 4,
};

struct SynthSchedule {
  std::vector<Gesture> gestures;
  double noise_std = 5.0;
  std::optional<std::uint64_t> seed;  // defaults to the run seed
  SynthOptions options;
};

// JSON run configuration. Every section is optional:
//   {"seed": 1,
//    "trace": "rest_and_squeezes.csv",            (or)
//    "synth": {"gestures": [{"start_ms": 3000, "hold_ms": 1200}], "noise_std": 5,
//              "seed": 1, "baseline": 100, "burst_level": 450, "duration_ms": 0},
//    "game": {"n_stages", "stage_duration_ms", "squeeze_targets", "hold_target_ms",
//             "score_per_squeeze_max", "extension_weight", "tiers_per_stage",
//             "intermission_ms"},
//    "link": {"baud", "latency_ms", "jitter_ms", "loss_prob"},
//    "calibration": {"k_on", "k_off", "min_hold_ms", "window", "rest_ms"},
//    "thresholds": {"theta_on", "theta_off"},
//    "olfactory": {"enabled", "cooldown_ms", "emit_ms"},
//    "mode": "Extension", "offset_policy": "ReturnToRest",
//    "telemetry_hz": 50, "heartbeat_ms": 1000,
//    "output": {"report": "report.json", "log": "session.csv"},
//    "pacing": 1.0}
// Unknown keys are rejected. A relative trace path is resolved against
// base_dir.
struct RunConfig {
  SessionConfig session;
  std::optional<std::string> trace_path;
  SynthSchedule synth;
  std::uint64_t seed = 1;
  std::string report_path;
  std::string log_path;
  // Simulated ms per wall ms when served; 0 runs unpaced.
  double pacing = 1.0;
};

// Throws kConfigError.
RunConfig ParseRunConfig(std::string_view json_text, const std::string& base_dir = "");
// Throws kIoError or kConfigError.
RunConfig LoadRunConfig(const std::string& path);

EmgTrace LoadTrace(const RunConfig& cfg);

// Runs a session to completion, writes the report (stdout when no path) and
// log, and maps failures to exit codes with a message on err.
int RunHeadless(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Throws kParseError for malformed actions.
ControlAction ParseControlAction(std::string_view json_text);

// HTTP front end over a live simulation:
//   GET  /state    snapshot JSON
//   POST /control  ControlAction JSON; 200 accepted, 409 rejected, 400 malformed
//   GET  /stream   chunked NDJSON telemetry at telemetry_hz
// Sessions start idle and wait for StartStage.
class Server {
 public:
  explicit Server(const RunConfig& cfg);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts serving in the background. Port 0 picks a free port.
  // Returns the bound port. Throws kIoError.
  int Start(const std::string& host, int port);
  // Blocks until Stop.
  void Wait();
  void Stop();

  // Thread-safe direct access, used by the HTTP handlers.
  ControlResult Submit(const ControlAction& action);
  SessionSnapshot Snapshot();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace midas::service

#endif  // MIDAS_SERVICE_H_

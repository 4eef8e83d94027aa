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

#ifndef MIDAS_SESSION_H_
#define MIDAS_SESSION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "midas/actuation.h"
#include "midas/game.h"
#include "midas/netlink.h"
#include "midas/sessionlog.h"
#include "midas/signals.h"

namespace midas {

struct OlfactoryConfig {
  bool enabled = true;
  std::int64_t cooldown_ms = 1000;
  std::int64_t emit_ms = 1500;
};

struct SessionConfig {
  GameConfig game;
  LinkConfig link;
  CalibrationParams calibration;
  // Leading stretch of the trace treated as rest for calibration.
  std::int64_t rest_ms = 2000;
  // Skip calibration and use these thresholds (theta_on, theta_off).
  std::optional<std::pair<double, double>> thresholds;
  OlfactoryConfig olfactory;
  IntentMode mode = IntentMode::kExtension;
  OffsetPolicy offset_policy = OffsetPolicy::kReturnToRest;
  ServoSpec servo;
  LinkageModel linkage;
  int telemetry_hz = 50;
  int heartbeat_ms = 1000;
  // Headless runs start stage 1 at t=0; a served session waits for StartStage.
  bool auto_start = true;
};

struct ControlAction {
  enum class Type {
    kStartStage,
    kStopStage,
    kSetMode,
    kRecalibrate,
    kScentTrigger,
    kSetOlfactoryEnabled,
  };
  Type type = Type::kStartStage;
  IntentMode mode = IntentMode::kExtension;
  double k_on = 0.0;
  double k_off = 0.0;
  bool enabled = true;

  static ControlAction StartStage() { return {Type::kStartStage}; }
  static ControlAction StopStage() { return {Type::kStopStage}; }
  static ControlAction SetMode(IntentMode m) {
    ControlAction a{Type::kSetMode};
    a.mode = m;
    return a;
  }
  static ControlAction Recalibrate(double k_on, double k_off) {
    ControlAction a{Type::kRecalibrate};
    a.k_on = k_on;
    a.k_off = k_off;
    return a;
  }
  static ControlAction ScentTrigger() { return {Type::kScentTrigger}; }
  static ControlAction SetOlfactoryEnabled(bool enabled) {
    ControlAction a{Type::kSetOlfactoryEnabled};
    a.enabled = enabled;
    return a;
  }
};

const char* ControlActionName(ControlAction::Type type);

struct ControlResult {
  bool accepted = false;
  std::string message;
};

struct StageSummary {
  int index = 0;
  StageStatus status = StageStatus::kRunning;
  int squeezes = 0;
  double score = 0.0;
  int cup_tier = 0;
  double cup_level = 0.0;
  std::int64_t elapsed_ms = 0;

  friend bool operator==(const StageSummary&, const StageSummary&) = default;
};

struct SessionReport {
  double total_score = 0.0;
  int squeezes = 0;
  std::vector<StageSummary> stages;
  int scent_emissions = 0;
  std::uint64_t frames_sent = 0;
  std::uint64_t frames_dropped = 0;

  friend bool operator==(const SessionReport&, const SessionReport&) = default;
};

// Fixed key names: total_score, squeezes, stages, scent_emissions,
// frames_sent, frames_dropped.
std::string ReportToJson(const SessionReport& report);
SessionReport ReportFromJson(const std::string& text);

struct SessionSnapshot {
  std::int64_t t_ms = 0;
  GamePhase phase = GamePhase::kIdle;
  IntentMode mode = IntentMode::kExtension;
  double filtered_emg = 0.0;
  bool intent_active = false;
  double servo_theta = 0.0;
  double servo_target = 0.0;
  double openness = 0.0;
  std::optional<StageState> stage;
  double total_score = 0.0;
  int squeezes = 0;
  bool scent_enabled = true;
  bool scent_emitting = false;
  int scent_emissions = 0;
  double theta_on = 0.0;
  double theta_off = 0.0;
  std::uint64_t frames_sent = 0;
  std::uint64_t frames_dropped = 0;
};

std::string SnapshotToJson(const SessionSnapshot& snapshot);
// The reduced record pushed on the telemetry stream.
std::string TelemetryToJson(const SessionSnapshot& snapshot);

// The whole device network on one simulated millisecond clock: the
// exoskeleton controller filters EMG, detects intent and drives the servo;
// intent travels over the hub to the game; squeezes travel back to the
// controller, which fires the olfactory device. Every step is logged.
class Simulation {
 public:
  Simulation(EmgTrace trace, const SessionConfig& cfg);

  // Processes one millisecond tick.
  void Step();
  bool done() const { return engine_.phase() == GamePhase::kOver; }
  std::int64_t now_ms() const { return now_ms_; }

  // Validated against the current state and applied before the next tick.
  ControlResult Apply(const ControlAction& action);

  SessionSnapshot Snapshot() const;
  SessionReport Report() const;
  const SessionLog& log() const { return log_; }
  const GameEngine& engine() const { return engine_; }
  const CalibrationResult& calibration() const { return calibration_; }
  const Hub& hub() const { return hub_; }

 private:
  void SendFrame(MsgType type, std::uint8_t src, std::uint8_t dst,
                 std::vector<std::uint8_t> payload);
  void HandleGameEvents(const std::vector<GameEvent>& events);
  void HandleDelivery(const Delivery& d);
  void ScentRequest();
  void Log(RecordKind kind, double k1, double k2, double k3, std::string note);

  SessionConfig cfg_;
  EmgTrace trace_;
  std::size_t cursor_ = 0;
  MovingAverage filter_;
  CalibrationResult calibration_;
  IntentDetector detector_;
  double last_filtered_ = 0.0;
  ServoState servo_;
  Hub hub_;
  SeqCounter seq_;
  GameEngine engine_;
  OlfactoryState olfactory_;
  int scent_emissions_ = 0;
  SessionLog log_;
  std::int64_t now_ms_ = 0;
};

struct SessionResult {
  SessionReport report;
  SessionLog log;
};

// Runs until every stage has finished.
SessionResult RunSession(const EmgTrace& trace, const SessionConfig& cfg);
SessionResult RunSession(const EmgTrace& trace, SessionConfig cfg, const LinkConfig& link,
                         std::uint64_t seed);

// Feeds the logged intent arrivals, control actions and scent requests
// through a fresh game engine and olfactory device.
SessionReport ReplaySession(const SessionLog& log);

}  // namespace midas

#endif  // MIDAS_SESSION_H_

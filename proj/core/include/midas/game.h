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

#ifndef MIDAS_GAME_H_
#define MIDAS_GAME_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "midas/signals.h"

namespace midas {

struct GameConfig {
  int n_stages = 5;
  std::int64_t stage_duration_ms = 180'000;
  std::vector<int> squeeze_targets = {5, 8, 11, 14, 17};
  std::int64_t hold_target_ms = 1000;
  double score_per_squeeze_max = 100.0;
  // Share of a squeeze's points earned by the following extension; 0 scores
  // on contraction alone.
  double extension_weight = 0.0;
  int tiers_per_stage = 1;
  std::int64_t intermission_ms = 3000;
};

// Throws kInvalidArgument describing the first violated constraint.
void ValidateGameConfig(const GameConfig& cfg);

struct SqueezeEvent {
  std::int64_t t_ms = 0;        // Offset time
  std::int64_t contract_ms = 0; // Onset -> Offset
  std::int64_t extend_ms = 0;   // Offset -> next Onset, 0 when none

  friend bool operator==(const SqueezeEvent&, const SqueezeEvent&) = default;
};

// Pairs Onset/Offset events. A trailing Onset yields nothing. Throws
// kNonAlternating if the stream does not alternate starting with Onset.
std::vector<SqueezeEvent> DetectSqueezes(std::span<const IntentEvent> events);

double ScoreSqueeze(const SqueezeEvent& e, const GameConfig& cfg);

enum class StageStatus { kRunning, kComplete, kTimedOut };

const char* StageStatusName(StageStatus status);

struct StageState {
  int index = 1;  // 1-based
  std::int64_t elapsed_ms = 0;
  int squeezes_done = 0;
  double cup_level = 0.0;
  int cup_tier = 0;
  double score = 0.0;
  StageStatus status = StageStatus::kRunning;

  friend bool operator==(const StageState&, const StageState&) = default;
};

enum class GameEventKind : std::uint8_t {
  kStageStarted = 1,
  kLemonSqueezed = 2,
  kCupFilled = 3,
  kStageComplete = 4,
  kStageTimedOut = 5,
  kGameComplete = 6,
  kExtensionCredit = 7,
};

const char* GameEventKindName(GameEventKind kind);

enum class SoundCue : std::uint8_t { kNone, kSqueeze, kChime };

struct GameEvent {
  GameEventKind kind = GameEventKind::kStageStarted;
  std::int64_t t_ms = 0;
  int stage = 0;
  double value = 0.0;  // points for squeezes/credits, tier for fills
  SoundCue cue = SoundCue::kNone;

  friend bool operator==(const GameEvent&, const GameEvent&) = default;
};

struct SqueezeOutcome {
  StageState stage;
  std::vector<GameEvent> events;
};

// Scores one squeeze into a running stage and advances the cup. Emits
// LemonSqueezed, then CupFilled and StageComplete (chime) when the stage's
// target is reached. Throws kStageNotRunning.
SqueezeOutcome ApplySqueeze(const StageState& stage, const SqueezeEvent& e,
                            const GameConfig& cfg);

// Advances the stage clock, clamping at the stage duration; a running stage
// that reaches the limit becomes TimedOut.
StageState Tick(const StageState& stage, std::int64_t dt_ms, const GameConfig& cfg);

struct OlfactoryState {
  bool enabled = true;
  std::int64_t cooldown_ms = 1000;
  std::int64_t emitting_until_ms = 0;
  std::optional<std::int64_t> last_trigger_ms;

  bool EmittingAt(std::int64_t t_ms) const { return enabled && t_ms < emitting_until_ms; }
};

struct ScentEvent {
  std::int64_t t_ms = 0;
  std::int64_t until_ms = 0;
};

struct ScentOutcome {
  OlfactoryState state;
  std::vector<ScentEvent> released;  // empty when suppressed
};

ScentOutcome TriggerScent(const OlfactoryState& o, std::int64_t t_ms, std::int64_t emit_ms);

// Disabling cuts off any emission in progress.
OlfactoryState SetScentEnabled(const OlfactoryState& o, bool enabled, std::int64_t t_ms);

enum class GamePhase { kIdle, kRunning, kIntermission, kOver };

const char* GamePhaseName(GamePhase phase);

// Drives the stage sequence on a millisecond clock: pairs streamed intent
// events into squeezes, applies them to the running stage, times stages out
// and inserts intermissions between them.
class GameEngine {
 public:
  explicit GameEngine(const GameConfig& cfg);

  bool CanStart() const { return phase_ == GamePhase::kIdle; }
  bool CanStop() const { return phase_ == GamePhase::kRunning; }
  // Starts the first stage or resumes a paused one. No-op unless CanStart().
  std::vector<GameEvent> Start(std::int64_t now_ms);
  // Pauses the running stage's clock. No-op unless CanStop().
  void Stop();

  std::vector<GameEvent> OnIntent(const IntentEvent& event, std::int64_t now_ms);
  std::vector<GameEvent> Tick(std::int64_t now_ms);

  struct SqueezeRecord {
    SqueezeEvent event;
    int stage = 0;
    bool applied = false;
  };

  GamePhase phase() const { return phase_; }
  const GameConfig& config() const { return cfg_; }
  const std::vector<StageState>& stages() const { return stages_; }
  // The stage currently running, paused or just finished; nullptr before the
  // first start.
  const StageState* current() const;
  const std::vector<SqueezeRecord>& squeezes() const { return squeezes_; }
  double total_score() const;
  int applied_squeezes() const;

 private:
  std::vector<GameEvent> BeginStage(std::int64_t now_ms);
  void EndStage(std::int64_t now_ms, std::vector<GameEvent>& events);

  GameConfig cfg_;
  GamePhase phase_ = GamePhase::kIdle;
  std::vector<StageState> stages_;
  std::int64_t last_tick_ms_ = 0;
  std::int64_t next_stage_at_ms_ = 0;
  std::optional<IntentEvent> pending_onset_;
  // Offset awaiting the next Onset for extension credit.
  struct PendingCredit {
    std::int64_t offset_ms;
    int stage;
  };
  std::optional<PendingCredit> pending_credit_;
  bool awaiting_extension_ = false;
  std::vector<SqueezeRecord> squeezes_;
};

}  // namespace midas

#endif  // MIDAS_GAME_H_

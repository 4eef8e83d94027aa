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

#include "midas/game.h"

#include <algorithm>
#include <string>

#include "midas/error.h"

namespace midas {

void ValidateGameConfig(const GameConfig& cfg) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "game config: " + what);
  };
  if (cfg.n_stages < 1) fail("n_stages must be >= 1");
  if (cfg.stage_duration_ms <= 0) fail("stage_duration_ms must be positive");
  if (static_cast<int>(cfg.squeeze_targets.size()) != cfg.n_stages) {
    fail("squeeze_targets needs one entry per stage");
  }
  for (std::size_t i = 0; i < cfg.squeeze_targets.size(); ++i) {
    if (cfg.squeeze_targets[i] < 1) fail("squeeze targets must be >= 1");
    if (i > 0 && cfg.squeeze_targets[i] <= cfg.squeeze_targets[i - 1]) {
      fail("squeeze_targets must be strictly increasing");
    }
  }
  if (cfg.hold_target_ms <= 0) fail("hold_target_ms must be positive");
  if (cfg.score_per_squeeze_max < 0) fail("score_per_squeeze_max must be non-negative");
  if (cfg.extension_weight < 0 || cfg.extension_weight > 1) {
    fail("extension_weight must lie in [0, 1]");
  }
  if (cfg.tiers_per_stage < 1) fail("tiers_per_stage must be >= 1");
  if (cfg.intermission_ms < 0) fail("intermission_ms must be non-negative");
}

std::vector<SqueezeEvent> DetectSqueezes(std::span<const IntentEvent> events) {
  std::vector<SqueezeEvent> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const IntentKind expected = i % 2 == 0 ? IntentKind::kOnset : IntentKind::kOffset;
    if (events[i].kind != expected) {
      throw Error(ErrorCode::kNonAlternating,
                  "intent event " + std::to_string(i) + " breaks Onset/Offset alternation");
    }
  }
  for (std::size_t i = 0; i + 1 < events.size(); i += 2) {
    SqueezeEvent e;
    e.t_ms = events[i + 1].t_ms;
    e.contract_ms = events[i + 1].t_ms - events[i].t_ms;
    e.extend_ms = i + 2 < events.size() ? events[i + 2].t_ms - events[i + 1].t_ms : 0;
    out.push_back(e);
  }
  return out;
}

double ScoreSqueeze(const SqueezeEvent& e, const GameConfig& cfg) {
  const double hold = static_cast<double>(cfg.hold_target_ms);
  const double contract = std::min<double>(std::max<std::int64_t>(e.contract_ms, 0), hold) / hold;
  const double extend = std::min<double>(std::max<std::int64_t>(e.extend_ms, 0), hold) / hold;
  const double w = cfg.extension_weight;
  return cfg.score_per_squeeze_max * ((1.0 - w) * contract + w * extend);
}

const char* StageStatusName(StageStatus status) {
  switch (status) {
    case StageStatus::kRunning: return "Running";
    case StageStatus::kComplete: return "Complete";
    case StageStatus::kTimedOut: return "TimedOut";
  }
  return "?";
}

const char* GameEventKindName(GameEventKind kind) {
  switch (kind) {
    case GameEventKind::kStageStarted: return "StageStarted";
    case GameEventKind::kLemonSqueezed: return "LemonSqueezed";
    case GameEventKind::kCupFilled: return "CupFilled";
    case GameEventKind::kStageComplete: return "StageComplete";
    case GameEventKind::kStageTimedOut: return "StageTimedOut";
    case GameEventKind::kGameComplete: return "GameComplete";
    case GameEventKind::kExtensionCredit: return "ExtensionCredit";
  }
  return "?";
}

SqueezeOutcome ApplySqueeze(const StageState& stage, const SqueezeEvent& e,
                            const GameConfig& cfg) {
  if (stage.status != StageStatus::kRunning) {
    throw Error(ErrorCode::kStageNotRunning,
                "stage " + std::to_string(stage.index) + " is " +
                    StageStatusName(stage.status));
  }
  if (stage.index < 1 || stage.index > static_cast<int>(cfg.squeeze_targets.size())) {
    throw Error(ErrorCode::kInvalidArgument, "stage index has no squeeze target");
  }
  const int target = cfg.squeeze_targets[static_cast<std::size_t>(stage.index - 1)];

  SqueezeOutcome out;
  StageState& next = out.stage;
  next = stage;
  const double points = ScoreSqueeze(e, cfg);
  ++next.squeezes_done;
  next.score += points;
  out.events.push_back(
      {GameEventKind::kLemonSqueezed, e.t_ms, stage.index, points, SoundCue::kSqueeze});

  const int in_cup = next.squeezes_done - next.cup_tier * target;
  next.cup_level = static_cast<double>(in_cup) / target;
  if (in_cup >= target) {
    ++next.cup_tier;
    out.events.push_back({GameEventKind::kCupFilled, e.t_ms, stage.index,
                          static_cast<double>(next.cup_tier), SoundCue::kNone});
    if (next.cup_tier >= cfg.tiers_per_stage) {
      next.status = StageStatus::kComplete;
      next.cup_level = 1.0;
      out.events.push_back(
          {GameEventKind::kStageComplete, e.t_ms, stage.index, next.score, SoundCue::kChime});
    } else {
      next.cup_level = 0.0;
    }
  }
  return out;
}

StageState Tick(const StageState& stage, std::int64_t dt_ms, const GameConfig& cfg) {
  if (dt_ms <= 0) throw Error(ErrorCode::kInvalidArgument, "tick requires dt_ms > 0");
  StageState next = stage;
  if (stage.status != StageStatus::kRunning) return next;
  next.elapsed_ms = std::min(stage.elapsed_ms + dt_ms, cfg.stage_duration_ms);
  if (next.elapsed_ms >= cfg.stage_duration_ms) next.status = StageStatus::kTimedOut;
  return next;
}

ScentOutcome TriggerScent(const OlfactoryState& o, std::int64_t t_ms, std::int64_t emit_ms) {
  ScentOutcome out{o, {}};
  if (!o.enabled) return out;
  if (o.last_trigger_ms && t_ms - *o.last_trigger_ms < o.cooldown_ms) return out;
  out.state.last_trigger_ms = t_ms;
  out.state.emitting_until_ms = t_ms + emit_ms;
  out.released.push_back({t_ms, t_ms + emit_ms});
  return out;
}

OlfactoryState SetScentEnabled(const OlfactoryState& o, bool enabled, std::int64_t t_ms) {
  OlfactoryState next = o;
  next.enabled = enabled;
  if (!enabled) next.emitting_until_ms = std::min(next.emitting_until_ms, t_ms);
  return next;
}

const char* GamePhaseName(GamePhase phase) {
  switch (phase) {
    case GamePhase::kIdle: return "Idle";
    case GamePhase::kRunning: return "Running";
    case GamePhase::kIntermission: return "Intermission";
    case GamePhase::kOver: return "Over";
  }
  return "?";
}

GameEngine::GameEngine(const GameConfig& cfg) : cfg_(cfg) { ValidateGameConfig(cfg_); }

const StageState* GameEngine::current() const {
  return stages_.empty() ? nullptr : &stages_.back();
}

double GameEngine::total_score() const {
  double total = 0.0;
  for (const auto& s : stages_) total += s.score;
  return total;
}

int GameEngine::applied_squeezes() const {
  int total = 0;
  for (const auto& s : stages_) total += s.squeezes_done;
  return total;
}

std::vector<GameEvent> GameEngine::BeginStage(std::int64_t now_ms) {
  StageState stage;
  stage.index = static_cast<int>(stages_.size()) + 1;
  stages_.push_back(stage);
  phase_ = GamePhase::kRunning;
  return {{GameEventKind::kStageStarted, now_ms, stage.index, 0.0, SoundCue::kNone}};
}

void GameEngine::EndStage(std::int64_t now_ms, std::vector<GameEvent>& events) {
  pending_credit_.reset();
  if (static_cast<int>(stages_.size()) >= cfg_.n_stages) {
    phase_ = GamePhase::kOver;
    events.push_back({GameEventKind::kGameComplete, now_ms, stages_.back().index,
                      total_score(), SoundCue::kNone});
    return;
  }
  phase_ = GamePhase::kIntermission;
  next_stage_at_ms_ = now_ms + cfg_.intermission_ms;
}

std::vector<GameEvent> GameEngine::Start(std::int64_t now_ms) {
  if (!CanStart()) return {};
  last_tick_ms_ = std::max(last_tick_ms_, now_ms);
  if (stages_.empty()) return BeginStage(now_ms);
  phase_ = GamePhase::kRunning;
  return {};
}

void GameEngine::Stop() {
  if (CanStop()) phase_ = GamePhase::kIdle;
}

std::vector<GameEvent> GameEngine::OnIntent(const IntentEvent& event, std::int64_t now_ms) {
  std::vector<GameEvent> events;
  if (event.kind == IntentKind::kOnset) {
    if (awaiting_extension_ && !squeezes_.empty()) {
      squeezes_.back().event.extend_ms = event.t_ms - squeezes_.back().event.t_ms;
    }
    awaiting_extension_ = false;
    if (pending_credit_ && cfg_.extension_weight > 0.0 && phase_ == GamePhase::kRunning &&
        stages_.back().index == pending_credit_->stage &&
        stages_.back().status == StageStatus::kRunning) {
      const double hold = static_cast<double>(cfg_.hold_target_ms);
      const double extend =
          std::min<double>(std::max<std::int64_t>(event.t_ms - pending_credit_->offset_ms, 0),
                           hold);
      const double points = cfg_.score_per_squeeze_max * cfg_.extension_weight * extend / hold;
      stages_.back().score += points;
      events.push_back({GameEventKind::kExtensionCredit, now_ms, stages_.back().index, points,
                        SoundCue::kNone});
    }
    pending_credit_.reset();
    pending_onset_ = event;
    return events;
  }

  // An Offset with no Onset means the Onset was lost upstream.
  if (!pending_onset_) return events;
  SqueezeEvent squeeze;
  squeeze.t_ms = event.t_ms;
  squeeze.contract_ms = event.t_ms - pending_onset_->t_ms;
  pending_onset_.reset();
  if (squeeze.contract_ms <= 0) return events;

  SqueezeRecord record;
  record.event = squeeze;
  const bool running = phase_ == GamePhase::kRunning && !stages_.empty() &&
                       stages_.back().status == StageStatus::kRunning;
  if (running) {
    StageState& stage = stages_.back();
    record.stage = stage.index;
    record.applied = true;
    SqueezeOutcome outcome = ApplySqueeze(stage, squeeze, cfg_);
    stage = outcome.stage;
    for (auto& e : outcome.events) {
      e.t_ms = now_ms;
      events.push_back(e);
    }
    pending_credit_ = PendingCredit{squeeze.t_ms, stage.index};
    if (stage.status == StageStatus::kComplete) EndStage(now_ms, events);
  } else {
    record.stage = stages_.empty() ? 0 : stages_.back().index;
  }
  squeezes_.push_back(record);
  awaiting_extension_ = true;
  return events;
}

std::vector<GameEvent> GameEngine::Tick(std::int64_t now_ms) {
  if (now_ms < last_tick_ms_) {
    throw Error(ErrorCode::kClockRegression, "game clock moved backwards");
  }
  const std::int64_t dt = now_ms - last_tick_ms_;
  last_tick_ms_ = now_ms;
  std::vector<GameEvent> events;
  if (phase_ == GamePhase::kRunning && dt > 0) {
    StageState& stage = stages_.back();
    stage = midas::Tick(stage, dt, cfg_);
    if (stage.status == StageStatus::kTimedOut) {
      events.push_back({GameEventKind::kStageTimedOut, now_ms, stage.index, stage.score,
                        SoundCue::kNone});
      EndStage(now_ms, events);
    }
  }
  if (phase_ == GamePhase::kIntermission && now_ms >= next_stage_at_ms_) {
    auto started = BeginStage(now_ms);
    events.insert(events.end(), started.begin(), started.end());
  }
  return events;
}

}  // namespace midas

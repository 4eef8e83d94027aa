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

#include "midas/session.h"

#include <cmath>
#include <string>

#include "midas/error.h"
#include "midas/messages.h"

namespace midas {

namespace {

CalibrationResult InitialCalibration(const EmgTrace& trace, const SessionConfig& cfg) {
  if (cfg.thresholds) {
    CalibrationResult fixed;
    fixed.theta_on = cfg.thresholds->first;
    fixed.theta_off = cfg.thresholds->second;
    if (!(fixed.theta_on > fixed.theta_off)) {
      throw Error(ErrorCode::kInvalidArgument, "thresholds require theta_on > theta_off");
    }
    return fixed;
  }
  EmgTrace rest;
  rest.sample_rate_hz = trace.sample_rate_hz;
  for (const auto& s : trace.samples) {
    if (s.t_ms >= cfg.rest_ms) break;
    rest.samples.push_back(s);
  }
  return CalibrateBaseline(rest, cfg.calibration.k_on, cfg.calibration.k_off,
                           cfg.calibration.window);
}

DetectorConfig MakeDetectorConfig(const CalibrationResult& cal, const SessionConfig& cfg) {
  DetectorConfig d;
  d.theta_on = cal.theta_on;
  d.theta_off = cal.theta_off;
  d.mode = cfg.mode;
  d.min_hold_ms = cfg.calibration.min_hold_ms;
  return d;
}

double ModeCode(IntentMode m) { return m == IntentMode::kExtension ? 0.0 : 1.0; }

SessionReport BuildReport(const GameEngine& engine, int scent_emissions,
                          std::uint64_t frames_sent, std::uint64_t frames_dropped) {
  SessionReport report;
  report.total_score = engine.total_score();
  report.squeezes = engine.applied_squeezes();
  for (const StageState& s : engine.stages()) {
    report.stages.push_back(
        {s.index, s.status, s.squeezes_done, s.score, s.cup_tier, s.cup_level, s.elapsed_ms});
  }
  report.scent_emissions = scent_emissions;
  report.frames_sent = frames_sent;
  report.frames_dropped = frames_dropped;
  return report;
}

}  // namespace

const char* ControlActionName(ControlAction::Type type) {
  switch (type) {
    case ControlAction::Type::kStartStage: return "StartStage";
    case ControlAction::Type::kStopStage: return "StopStage";
    case ControlAction::Type::kSetMode: return "SetMode";
    case ControlAction::Type::kRecalibrate: return "Recalibrate";
    case ControlAction::Type::kScentTrigger: return "ScentTrigger";
    case ControlAction::Type::kSetOlfactoryEnabled: return "SetEnabled";
  }
  return "?";
}

Simulation::Simulation(EmgTrace trace, const SessionConfig& cfg)
    : cfg_(cfg),
      trace_(std::move(trace)),
      filter_(cfg.calibration.window),
      calibration_(InitialCalibration(trace_, cfg)),
      detector_(MakeDetectorConfig(calibration_, cfg)),
      hub_(cfg.link),
      engine_(cfg.game) {
  ValidateTrace(trace_);
  if (cfg_.telemetry_hz <= 0 || cfg_.telemetry_hz > 1000) {
    throw Error(ErrorCode::kInvalidArgument, "telemetry_hz must lie in [1, 1000]");
  }
  if (cfg_.heartbeat_ms <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "heartbeat_ms must be positive");
  }
  for (std::uint8_t n : {node::kHub, node::kEmg, node::kExoskeleton, node::kGame,
                         node::kOlfactory, node::kConsole}) {
    hub_.Register(n);
  }
  olfactory_.enabled = cfg_.olfactory.enabled;
  olfactory_.cooldown_ms = cfg_.olfactory.cooldown_ms;

  const GameConfig& g = cfg_.game;
  auto cfg_record = [this](const std::string& name, double v) {
    Log(RecordKind::kGame, v, 0, 0, "cfg." + name);
  };
  cfg_record("n_stages", g.n_stages);
  cfg_record("stage_duration_ms", static_cast<double>(g.stage_duration_ms));
  for (std::size_t i = 0; i < g.squeeze_targets.size(); ++i) {
    cfg_record("target." + std::to_string(i + 1), g.squeeze_targets[i]);
  }
  cfg_record("hold_target_ms", static_cast<double>(g.hold_target_ms));
  cfg_record("score_per_squeeze_max", g.score_per_squeeze_max);
  cfg_record("extension_weight", g.extension_weight);
  cfg_record("tiers_per_stage", g.tiers_per_stage);
  cfg_record("intermission_ms", static_cast<double>(g.intermission_ms));
  cfg_record("olfactory_enabled", cfg_.olfactory.enabled ? 1 : 0);
  cfg_record("cooldown_ms", static_cast<double>(cfg_.olfactory.cooldown_ms));
  cfg_record("emit_ms", static_cast<double>(cfg_.olfactory.emit_ms));
  cfg_record("auto_start", cfg_.auto_start ? 1 : 0);
  cfg_record("theta_on", calibration_.theta_on);
  cfg_record("theta_off", calibration_.theta_off);

  if (cfg_.auto_start) HandleGameEvents(engine_.Start(0));
}

void Simulation::Log(RecordKind kind, double k1, double k2, double k3, std::string note) {
  log_.Append(LogRecord{now_ms_, kind, k1, k2, k3, std::move(note)});
}

void Simulation::SendFrame(MsgType type, std::uint8_t src, std::uint8_t dst,
                           std::vector<std::uint8_t> payload) {
  Frame f;
  f.type = type;
  f.seq = seq_.Next(src);
  f.src = src;
  f.dst = dst;
  f.payload = std::move(payload);
  for (const auto& outcome : hub_.Send(f, now_ms_)) {
    Log(RecordKind::kNet, static_cast<double>(type), src, outcome.to,
        outcome.dropped ? "drop" : "tx");
  }
}

void Simulation::HandleGameEvents(const std::vector<GameEvent>& events) {
  for (const GameEvent& e : events) {
    Log(RecordKind::kGame, e.stage, e.value, static_cast<double>(e.cue),
        GameEventKindName(e.kind));
    msg::Game m{static_cast<std::uint8_t>(e.kind), static_cast<std::uint8_t>(e.stage),
                static_cast<std::uint32_t>(e.t_ms), e.value};
    SendFrame(MsgType::kGameEvent, node::kGame, node::kConsole, msg::Pack(m));
    if (e.kind == GameEventKind::kLemonSqueezed) {
      SendFrame(MsgType::kGameEvent, node::kGame, node::kExoskeleton, msg::Pack(m));
    }
  }
}

void Simulation::ScentRequest() {
  Log(RecordKind::kScent, 0, 0, 0, "req");
  ScentOutcome out = TriggerScent(olfactory_, now_ms_, cfg_.olfactory.emit_ms);
  olfactory_ = out.state;
  if (out.released.empty()) {
    Log(RecordKind::kScent, static_cast<double>(olfactory_.emitting_until_ms), 0, 0,
        "suppressed");
  } else {
    ++scent_emissions_;
    Log(RecordKind::kScent, static_cast<double>(out.released.front().until_ms), 0, 0,
        "release");
  }
}

void Simulation::HandleDelivery(const Delivery& d) {
  const Frame& f = d.frame;
  if (d.to == node::kGame && f.type == MsgType::kIntentEvent) {
    if (auto m = msg::UnpackIntent(f.payload)) {
      const IntentEvent& ev = m->event;
      Log(RecordKind::kIntent, ev.kind == IntentKind::kOnset ? 0 : 1, ModeCode(ev.mode),
          static_cast<double>(ev.t_ms), "rx");
      HandleGameEvents(engine_.OnIntent(ev, now_ms_));
    }
  } else if (d.to == node::kExoskeleton && f.type == MsgType::kGameEvent) {
    auto m = msg::UnpackGame(f.payload);
    if (m && m->kind == static_cast<std::uint8_t>(GameEventKind::kLemonSqueezed)) {
      SendFrame(MsgType::kScentCmd, node::kExoskeleton, node::kOlfactory,
                msg::Pack(msg::Scent{msg::ScentOp::kRelease}));
    }
  } else if (d.to == node::kOlfactory && f.type == MsgType::kScentCmd &&
             f.src == node::kExoskeleton) {
    auto m = msg::UnpackScent(f.payload);
    if (m && m->op == msg::ScentOp::kRelease) ScentRequest();
  }
  // Console-bound telemetry and forwarded control frames need no handling.
}

void Simulation::Step() {
  // Exoskeleton controller: filter, detect, command.
  while (cursor_ < trace_.samples.size() && trace_.samples[cursor_].t_ms <= now_ms_) {
    const EmgSample& s = trace_.samples[cursor_++];
    last_filtered_ = filter_.Push(s.value);
    Log(RecordKind::kEmg, s.value, last_filtered_, 0, "");
    if (auto ev = detector_.Push(s.t_ms, last_filtered_)) {
      Log(RecordKind::kIntent, ev->kind == IntentKind::kOnset ? 0 : 1, ModeCode(ev->mode),
          static_cast<double>(ev->t_ms), "tx");
      if (auto target = IntentToCommand(*ev, cfg_.offset_policy)) {
        servo_ = Command(servo_, *target, cfg_.servo);
      }
      SendFrame(MsgType::kIntentEvent, node::kExoskeleton, node::kGame,
                msg::Pack(msg::Intent{*ev}));
    }
  }

  const ServoState before = servo_;
  servo_ = midas::Step(servo_, 0.001, cfg_.servo);
  if (servo_ != before) {
    const double openness =
        FingerOpenness(LinkagePosition(servo_.theta_deg, cfg_.linkage), cfg_.linkage,
                       detector_.config().mode)
            .openness;
    Log(RecordKind::kServo, servo_.theta_deg, servo_.target_deg, openness, "");
  }

  const int period = 1000 / cfg_.telemetry_hz;
  if (now_ms_ % period == 0) {
    SendFrame(MsgType::kEmgFiltered, node::kExoskeleton, node::kConsole,
              msg::Pack(msg::EmgFiltered{static_cast<std::uint32_t>(now_ms_), last_filtered_}));
    SendFrame(MsgType::kServoState, node::kExoskeleton, node::kConsole,
              msg::Pack(msg::ServoStatus{servo_.theta_deg, servo_.target_deg}));
  }
  if (now_ms_ % cfg_.heartbeat_ms == 0) {
    SendFrame(MsgType::kHeartbeat, node::kExoskeleton, node::kBroadcast, {});
  }

  for (const Delivery& d : hub_.TransportStep(now_ms_)) HandleDelivery(d);

  HandleGameEvents(engine_.Tick(now_ms_));
  ++now_ms_;
}

ControlResult Simulation::Apply(const ControlAction& action) {
  using Type = ControlAction::Type;
  ControlResult result;
  switch (action.type) {
    case Type::kStartStage:
      if (!engine_.CanStart()) {
        result.message = std::string("cannot start: game is ") +
                         GamePhaseName(engine_.phase());
        return result;
      }
      break;
    case Type::kStopStage:
      if (!engine_.CanStop()) {
        result.message = std::string("cannot stop: game is ") + GamePhaseName(engine_.phase());
        return result;
      }
      break;
    case Type::kRecalibrate:
      if (!(action.k_on > action.k_off && action.k_off > 0.0)) {
        result.message = "recalibration requires k_on > k_off > 0";
        return result;
      }
      if (cfg_.thresholds || !(calibration_.baseline_std > 0.0)) {
        result.message = "no baseline available for recalibration";
        return result;
      }
      break;
    default:
      break;
  }

  result.accepted = true;
  const char* name = ControlActionName(action.type);
  switch (action.type) {
    case Type::kStartStage:
      Log(RecordKind::kCtl, 0, 0, 0, name);
      SendFrame(MsgType::kStageCtl, node::kConsole, node::kGame,
                msg::Pack(msg::StageCtl{msg::StageOp::kStart, 0, 0}));
      HandleGameEvents(engine_.Start(now_ms_));
      break;
    case Type::kStopStage:
      Log(RecordKind::kCtl, 0, 0, 0, name);
      SendFrame(MsgType::kStageCtl, node::kConsole, node::kGame,
                msg::Pack(msg::StageCtl{msg::StageOp::kStop, 0, 0}));
      engine_.Stop();
      break;
    case Type::kSetMode:
      Log(RecordKind::kCtl, ModeCode(action.mode), 0, 0, name);
      SendFrame(MsgType::kModeSet, node::kConsole, node::kExoskeleton,
                msg::Pack(msg::ModeSet{action.mode}));
      detector_.SetMode(action.mode);
      break;
    case Type::kRecalibrate:
      Log(RecordKind::kCtl, action.k_on, action.k_off, 0, name);
      SendFrame(MsgType::kStageCtl, node::kConsole, node::kExoskeleton,
                msg::Pack(msg::StageCtl{msg::StageOp::kRecalibrate, action.k_on, action.k_off}));
      calibration_.theta_on = calibration_.baseline_mean + action.k_on * calibration_.baseline_std;
      calibration_.theta_off =
          calibration_.baseline_mean + action.k_off * calibration_.baseline_std;
      detector_.SetThresholds(calibration_.theta_on, calibration_.theta_off);
      break;
    case Type::kScentTrigger:
      Log(RecordKind::kCtl, 0, 0, 0, name);
      SendFrame(MsgType::kScentCmd, node::kConsole, node::kOlfactory,
                msg::Pack(msg::Scent{msg::ScentOp::kRelease}));
      ScentRequest();
      break;
    case Type::kSetOlfactoryEnabled:
      Log(RecordKind::kCtl, action.enabled ? 1 : 0, 0, 0, name);
      SendFrame(MsgType::kScentCmd, node::kConsole, node::kOlfactory,
                msg::Pack(msg::Scent{action.enabled ? msg::ScentOp::kEnable
                                                    : msg::ScentOp::kDisable}));
      olfactory_ = SetScentEnabled(olfactory_, action.enabled, now_ms_);
      break;
  }
  return result;
}

SessionSnapshot Simulation::Snapshot() const {
  SessionSnapshot s;
  s.t_ms = now_ms_;
  s.phase = engine_.phase();
  s.mode = detector_.config().mode;
  s.filtered_emg = last_filtered_;
  s.intent_active = detector_.active();
  s.servo_theta = servo_.theta_deg;
  s.servo_target = servo_.target_deg;
  s.openness = FingerOpenness(LinkagePosition(servo_.theta_deg, cfg_.linkage), cfg_.linkage,
                              s.mode)
                   .openness;
  if (const StageState* st = engine_.current()) s.stage = *st;
  s.total_score = engine_.total_score();
  s.squeezes = engine_.applied_squeezes();
  s.scent_enabled = olfactory_.enabled;
  s.scent_emitting = olfactory_.EmittingAt(now_ms_);
  s.scent_emissions = scent_emissions_;
  s.theta_on = calibration_.theta_on;
  s.theta_off = calibration_.theta_off;
  s.frames_sent = hub_.stats().frames_sent;
  s.frames_dropped = hub_.stats().frames_dropped;
  return s;
}

SessionReport Simulation::Report() const {
  return BuildReport(engine_, scent_emissions_, hub_.stats().frames_sent,
                     hub_.stats().frames_dropped);
}

SessionResult RunSession(const EmgTrace& trace, const SessionConfig& cfg) {
  SessionConfig headless = cfg;
  headless.auto_start = true;
  Simulation sim(trace, headless);
  while (!sim.done()) sim.Step();
  return {sim.Report(), sim.log()};
}

SessionResult RunSession(const EmgTrace& trace, SessionConfig cfg, const LinkConfig& link,
                         std::uint64_t seed) {
  cfg.link = link;
  cfg.link.seed = seed;
  return RunSession(trace, cfg);
}

SessionReport ReplaySession(const SessionLog& log) {
  const ReplayStream stream = ExtractReplay(log);
  if (stream.events.empty()) return {};

  auto get = [&](const std::string& key) -> double {
    auto it = stream.config.find(key);
    if (it == stream.config.end()) {
      throw Error(ErrorCode::kMalformedRecord, "log lacks config record cfg." + key);
    }
    return it->second;
  };
  GameConfig g;
  g.n_stages = static_cast<int>(get("n_stages"));
  g.stage_duration_ms = static_cast<std::int64_t>(get("stage_duration_ms"));
  g.squeeze_targets.clear();
  for (int i = 1; i <= g.n_stages; ++i) {
    g.squeeze_targets.push_back(static_cast<int>(get("target." + std::to_string(i))));
  }
  g.hold_target_ms = static_cast<std::int64_t>(get("hold_target_ms"));
  g.score_per_squeeze_max = get("score_per_squeeze_max");
  g.extension_weight = get("extension_weight");
  g.tiers_per_stage = static_cast<int>(get("tiers_per_stage"));
  g.intermission_ms = static_cast<std::int64_t>(get("intermission_ms"));

  GameEngine engine(g);
  OlfactoryState olfactory;
  olfactory.enabled = get("olfactory_enabled") != 0.0;
  olfactory.cooldown_ms = static_cast<std::int64_t>(get("cooldown_ms"));
  const auto emit_ms = static_cast<std::int64_t>(get("emit_ms"));
  if (get("auto_start") != 0.0) engine.Start(0);

  int emissions = 0;
  std::uint64_t sent = 0;
  std::uint64_t dropped = 0;
  std::int64_t tick = 0;
  auto advance_to = [&](std::int64_t t) {
    for (; tick < t; ++tick) engine.Tick(tick);
  };

  using Type = ReplayEvent::Type;
  for (const ReplayEvent& ev : stream.events) {
    const LogRecord& r = ev.record;
    advance_to(r.t_ms);
    switch (ev.type) {
      case Type::kIntent: {
        IntentEvent intent;
        intent.kind = r.k1 == 0 ? IntentKind::kOnset : IntentKind::kOffset;
        intent.mode = r.k2 == 0 ? IntentMode::kExtension : IntentMode::kFlexion;
        intent.t_ms = static_cast<std::int64_t>(r.k3);
        engine.OnIntent(intent, r.t_ms);
        break;
      }
      case Type::kControl:
        if (r.note == "StartStage") engine.Start(r.t_ms);
        if (r.note == "StopStage") engine.Stop();
        if (r.note == "SetEnabled") olfactory = SetScentEnabled(olfactory, r.k1 != 0, r.t_ms);
        break;
      case Type::kScentRequest: {
        ScentOutcome out = TriggerScent(olfactory, r.t_ms, emit_ms);
        olfactory = out.state;
        emissions += static_cast<int>(out.released.size());
        break;
      }
      case Type::kFrameSent:
        ++sent;
        break;
      case Type::kFrameDropped:
        ++sent;
        ++dropped;
        break;
      case Type::kEnd:
        advance_to(r.t_ms + 1);
        break;
    }
  }
  return BuildReport(engine, emissions, sent, dropped);
}

}  // namespace midas

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

#include <gtest/gtest.h>

#include <algorithm>

#include "midas/error.h"
#include "midas/session.h"

namespace midas {
namespace {

std::vector<Gesture> Squeezes(int n, std::int64_t first = 3000, std::int64_t gap = 2500,
                              std::int64_t hold = 1200) {
  std::vector<Gesture> g;
  for (int i = 0; i < n; ++i) g.push_back({first + i * gap, hold});
  return g;
}

SessionConfig Short() {
  SessionConfig cfg;
  cfg.game.stage_duration_ms = 20000;
  cfg.game.intermission_ms = 500;
  return cfg;
}

int CountRecords(const SessionLog& log, RecordKind kind, const std::string& note) {
  return static_cast<int>(std::count_if(
      log.records().begin(), log.records().end(),
      [&](const LogRecord& r) { return r.kind == kind && r.note == note; }));
}

TEST(SessionTest, FiveGesturesCompleteStageOne) {
  const EmgTrace trace = SynthEmg(Squeezes(5), 5.0, 21);
  const SessionResult r = RunSession(trace, SessionConfig{}, LinkConfig{}, 3);
  ASSERT_EQ(r.report.stages.size(), 5u);
  EXPECT_EQ(r.report.squeezes, 5);
  EXPECT_EQ(r.report.stages[0].status, StageStatus::kComplete);
  EXPECT_EQ(r.report.stages[0].squeezes, 5);
  EXPECT_DOUBLE_EQ(r.report.stages[0].score, 500.0);
  for (std::size_t i = 1; i < 5; ++i) {
    EXPECT_EQ(r.report.stages[i].status, StageStatus::kTimedOut);
    EXPECT_EQ(r.report.stages[i].elapsed_ms, 180000);
  }
  EXPECT_EQ(r.report.scent_emissions, 5);
  EXPECT_EQ(r.report.frames_dropped, 0u);
}

TEST(SessionTest, GestureFreeTraceTimesOutEveryStage) {
  const SessionResult r = RunSession(SynthEmg({}, 5.0, 1), Short());
  EXPECT_EQ(r.report.squeezes, 0);
  for (const auto& s : r.report.stages) EXPECT_EQ(s.status, StageStatus::kTimedOut);
  EXPECT_EQ(r.report.total_score, 0.0);
}

TEST(SessionTest, ScentEqualsSqueezesWithoutCooldown) {
  SessionConfig cfg = Short();
  cfg.olfactory.cooldown_ms = 0;
  const SessionResult r = RunSession(SynthEmg(Squeezes(9, 3000, 1500, 600), 5.0, 4), cfg);
  EXPECT_EQ(r.report.squeezes, 9);
  EXPECT_EQ(r.report.scent_emissions, r.report.squeezes);
}

TEST(SessionTest, CooldownSuppressesCloseSqueezes) {
  SessionConfig cfg = Short();
  cfg.olfactory.cooldown_ms = 5000;
  const SessionResult r = RunSession(SynthEmg(Squeezes(6, 3000, 1500, 600), 5.0, 4), cfg);
  EXPECT_EQ(r.report.squeezes, 6);
  EXPECT_LT(r.report.scent_emissions, r.report.squeezes);
  EXPECT_EQ(CountRecords(r.log, RecordKind::kScent, "req"), 6);
}

TEST(SessionTest, IntentReachesGameAfterLinkLatency) {
  SessionConfig cfg = Short();
  cfg.link.latency_ms = 40;
  const SessionResult r = RunSession(SynthEmg(Squeezes(1), 5.0, 2), cfg);
  std::vector<std::int64_t> tx, rx;
  for (const auto& rec : r.log.records()) {
    if (rec.kind != RecordKind::kIntent) continue;
    (rec.note == "tx" ? tx : rx).push_back(rec.t_ms);
  }
  ASSERT_EQ(tx.size(), 2u);
  ASSERT_EQ(rx.size(), 2u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_GE(rx[i] - tx[i], 40);
    EXPECT_LE(rx[i] - tx[i], 42);
  }
}

TEST(SessionTest, DeterministicLogs) {
  SessionConfig cfg = Short();
  cfg.link.jitter_ms = 6;
  cfg.link.loss_prob = 0.05;
  const EmgTrace trace = SynthEmg(Squeezes(7), 12.0, 8);
  const auto a = RunSession(trace, cfg, cfg.link, 99);
  const auto b = RunSession(trace, cfg, cfg.link, 99);
  EXPECT_EQ(a.log.ToCsv(), b.log.ToCsv());
  EXPECT_EQ(a.report, b.report);
  const auto c = RunSession(trace, cfg, cfg.link, 100);
  EXPECT_NE(a.log.ToCsv(), c.log.ToCsv());
}

TEST(SessionTest, ReplayReproducesReport) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    SessionConfig cfg = Short();
    cfg.link.jitter_ms = 10;
    cfg.link.loss_prob = 0.1;
    cfg.game.extension_weight = 0.3;
    const auto r = RunSession(SynthEmg(Squeezes(12, 2500, 1800, 900), 8.0, seed), cfg,
                              cfg.link, seed);
    EXPECT_EQ(ReplaySession(r.log), r.report) << "seed " << seed;
    EXPECT_EQ(ReplaySession(SessionLog::ParseCsv(r.log.ToCsv())), r.report);
  }
}

TEST(SessionTest, ControlActions) {
  SessionConfig cfg = Short();
  cfg.auto_start = false;
  Simulation sim(SynthEmg(Squeezes(3), 5.0, 7), cfg);
  EXPECT_EQ(sim.Snapshot().phase, GamePhase::kIdle);
  EXPECT_FALSE(sim.Apply(ControlAction::StopStage()).accepted);
  EXPECT_TRUE(sim.Apply(ControlAction::StartStage()).accepted);
  EXPECT_FALSE(sim.Apply(ControlAction::StartStage()).accepted);
  EXPECT_TRUE(sim.Apply(ControlAction::SetMode(IntentMode::kFlexion)).accepted);
  EXPECT_EQ(sim.Snapshot().mode, IntentMode::kFlexion);
  EXPECT_EQ(CountRecords(sim.log(), RecordKind::kCtl, "SetMode"), 1);
  EXPECT_FALSE(sim.Apply(ControlAction::Recalibrate(1.0, 2.0)).accepted);
  const double old_on = sim.Snapshot().theta_on;
  EXPECT_TRUE(sim.Apply(ControlAction::Recalibrate(4.0, 2.0)).accepted);
  EXPECT_GT(sim.Snapshot().theta_on, old_on);
  EXPECT_TRUE(sim.Apply(ControlAction::ScentTrigger()).accepted);
  EXPECT_TRUE(sim.Snapshot().scent_emitting);
  EXPECT_TRUE(sim.Apply(ControlAction::SetOlfactoryEnabled(false)).accepted);
  EXPECT_FALSE(sim.Snapshot().scent_emitting);
  for (int i = 0; i < 100; ++i) sim.Step();
  EXPECT_TRUE(sim.Apply(ControlAction::StopStage()).accepted);
  const auto elapsed = sim.Snapshot().stage->elapsed_ms;
  for (int i = 0; i < 100; ++i) sim.Step();
  EXPECT_EQ(sim.Snapshot().stage->elapsed_ms, elapsed);
}

TEST(SessionTest, ServedSessionReplays) {
  SessionConfig cfg = Short();
  cfg.auto_start = false;
  Simulation sim(SynthEmg(Squeezes(6), 5.0, 5), cfg);
  for (int i = 0; i < 2500; ++i) sim.Step();
  sim.Apply(ControlAction::StartStage());
  for (int i = 0; i < 5000; ++i) sim.Step();
  sim.Apply(ControlAction::StopStage());
  for (int i = 0; i < 1000; ++i) sim.Step();
  sim.Apply(ControlAction::StartStage());
  sim.Apply(ControlAction::SetOlfactoryEnabled(false));
  while (!sim.done()) sim.Step();
  EXPECT_GT(sim.Report().squeezes, 0);
  EXPECT_EQ(ReplaySession(sim.log()), sim.Report());
}

TEST(SessionTest, FixedThresholdsAndErrors) {
  SessionConfig cfg = Short();
  cfg.thresholds = std::make_pair(300.0, 200.0);
  const auto r = RunSession(SynthEmg(Squeezes(2), 5.0, 5), cfg);
  EXPECT_EQ(r.report.squeezes, 2);
  cfg.thresholds = std::make_pair(200.0, 300.0);
  EXPECT_THROW(RunSession(SynthEmg({}, 5.0, 5), cfg), Error);
  SessionConfig flat = Short();
  EmgTrace constant;
  for (int t = 0; t < 3000; ++t) constant.samples.push_back({t, 100});
  try {
    RunSession(constant, flat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateCalibration);
  }
}

TEST(SessionTest, ReportJsonRoundTrip) {
  const auto r = RunSession(SynthEmg(Squeezes(3), 5.0, 5), Short());
  const std::string json = ReportToJson(r.report);
  for (const char* key : {"total_score", "squeezes", "stages", "scent_emissions", "frames_sent",
                          "frames_dropped"}) {
    EXPECT_NE(json.find(std::string("\"") + key + "\""), std::string::npos) << key;
  }
  EXPECT_EQ(ReportFromJson(json), r.report);
  EXPECT_THROW(ReportFromJson("{}"), Error);
}

TEST(SessionTest, TelemetryFitsLinkBudget) {
  const auto r = RunSession(SynthEmg(Squeezes(5), 5.0, 5), Short());
  // Offered load stays well under 11 520 B/s, so the hub never backs up.
  const auto last = r.log.records().back().t_ms;
  EXPECT_LT(static_cast<double>(r.report.frames_sent) / (last / 1000.0), 400.0);
}

}  // namespace
}  // namespace midas

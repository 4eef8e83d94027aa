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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "midas/error.h"
#include "midas/service.h"

namespace midas::service {
namespace {

using nlohmann::json;

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("midas_test_" + name)).string();
}

TEST(RunConfigTest, ParsesSections) {
  const RunConfig cfg = ParseRunConfig(R"({
    "seed": 9,
    "synth": {"gestures": [{"start_ms": 3000, "hold_ms": 800}], "noise_std": 2},
    "game": {"n_stages": 2, "squeeze_targets": [1, 2], "stage_duration_ms": 5000},
    "link": {"latency_ms": 3, "jitter_ms": 2, "loss_prob": 0.1},
    "calibration": {"k_on": 4, "k_off": 2, "rest_ms": 1500},
    "olfactory": {"cooldown_ms": 0},
    "mode": "Flexion", "offset_policy": "Hold", "telemetry_hz": 20,
    "output": {"report": "r.json"}, "pacing": 0
  })");
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.session.link.seed, 9u);
  EXPECT_EQ(cfg.session.game.n_stages, 2);
  EXPECT_EQ(cfg.session.link.jitter_ms, 2);
  EXPECT_EQ(cfg.session.calibration.k_on, 4);
  EXPECT_EQ(cfg.session.rest_ms, 1500);
  EXPECT_EQ(cfg.session.olfactory.cooldown_ms, 0);
  EXPECT_EQ(cfg.session.mode, IntentMode::kFlexion);
  EXPECT_EQ(cfg.session.offset_policy, OffsetPolicy::kHold);
  EXPECT_EQ(cfg.synth.gestures.size(), 1u);
  EXPECT_EQ(cfg.report_path, "r.json");
  EXPECT_EQ(cfg.pacing, 0);
}

TEST(RunConfigTest, RejectsBadConfigs) {
  for (const char* text :
       {"{", R"({"sede": 1})", R"({"game": {"n_stages": 0}})", R"({"mode": "Sideways"})",
        R"({"link": {"baud": "fast"}})", R"({"trace": "a.csv", "synth": {}})",
        R"({"pacing": -1})"}) {
    try {
      ParseRunConfig(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfigError) << text;
    }
  }
  try {
    LoadRunConfig("/nonexistent/config.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(RunHeadlessTest, ExitCodes) {
  RunConfig cfg = ParseRunConfig(R"({"synth": {"gestures": [{"start_ms": 3000, "hold_ms": 900}]},
                                     "game": {"stage_duration_ms": 8000}})");
  std::ostringstream out, err;
  EXPECT_EQ(RunHeadless(cfg, out, err), kExitOk);
  const json report = json::parse(out.str());
  EXPECT_EQ(report.at("squeezes"), 1);

  RunConfig missing = cfg;
  missing.trace_path = "/nonexistent/trace.csv";
  EXPECT_EQ(RunHeadless(missing, out, err), kExitIo);

  RunConfig bad_sim = cfg;
  bad_sim.session.thresholds = std::make_pair(1.0, 2.0);
  EXPECT_EQ(RunHeadless(bad_sim, out, err), kExitSimulation);

  RunConfig files = cfg;
  files.report_path = TempPath("report.json");
  files.log_path = TempPath("log.csv");
  std::ostringstream quiet;
  EXPECT_EQ(RunHeadless(files, quiet, err), kExitOk);
  EXPECT_TRUE(quiet.str().empty());
  EXPECT_TRUE(std::filesystem::exists(files.log_path));
  RunConfig unwritable = cfg;
  unwritable.report_path = "/nonexistent/dir/report.json";
  EXPECT_EQ(RunHeadless(unwritable, out, err), kExitIo);
}

TEST(ControlActionTest, Parsing) {
  EXPECT_EQ(ParseControlAction(R"({"action":"StartStage"})").type,
            ControlAction::Type::kStartStage);
  const auto mode = ParseControlAction(R"({"action":"SetMode","mode":"Flexion"})");
  EXPECT_EQ(mode.mode, IntentMode::kFlexion);
  const auto recal = ParseControlAction(R"({"action":"Recalibrate","k_on":4,"k_off":2})");
  EXPECT_EQ(recal.k_on, 4);
  EXPECT_FALSE(ParseControlAction(R"({"action":"SetEnabled","enabled":false})").enabled);
  for (const char* bad : {"", "[]", R"({"action":"Jump"})", R"({"action":"SetMode"})",
                          R"({"action":"SetMode","mode":"Up"})",
                          R"({"action":"StartStage","extra":1})",
                          R"({"action":"Recalibrate","k_on":"x","k_off":1})"}) {
    EXPECT_THROW(ParseControlAction(bad), Error) << bad;
  }
}

RunConfig ServeConfig() {
  return ParseRunConfig(R"({"synth": {"gestures": [{"start_ms": 3000, "hold_ms": 900}],
                                      "duration_ms": 60000},
                            "telemetry_hz": 50, "pacing": 1.0})");
}

TEST(ServerTest, StateControlAndStream) {
  Server server(ServeConfig());
  const int port = server.Start("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(5, 0);

  auto state = client.Get("/state");
  ASSERT_TRUE(state);
  EXPECT_EQ(state->status, 200);
  EXPECT_EQ(json::parse(state->body).at("status"), "Idle");

  auto bad = client.Post("/control", "{not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto unknown = client.Post("/control", R"({"action":"Fly"})", "application/json");
  ASSERT_TRUE(unknown);
  EXPECT_EQ(unknown->status, 400);
  auto rejected = client.Post("/control", R"({"action":"StopStage"})", "application/json");
  ASSERT_TRUE(rejected);
  EXPECT_EQ(rejected->status, 409);
  auto start = client.Post("/control", R"({"action":"StartStage"})", "application/json");
  ASSERT_TRUE(start);
  EXPECT_EQ(start->status, 200);
  EXPECT_TRUE(json::parse(start->body).at("accepted").get<bool>());
  auto mode = client.Post("/control", R"({"action":"SetMode","mode":"Flexion"})",
                          "application/json");
  ASSERT_TRUE(mode);
  EXPECT_EQ(mode->status, 200);
  EXPECT_EQ(server.Snapshot().mode, IntentMode::kFlexion);
  EXPECT_EQ(json::parse(client.Get("/state")->body).at("status"), "Running");

  // Read the stream for one second and count telemetry lines.
  std::string buffer;
  std::size_t lines = 0;
  bool saw_flexion = true;
  const auto until = std::chrono::steady_clock::now() + std::chrono::milliseconds(1000);
  httplib::Client streamer("127.0.0.1", port);
  streamer.set_read_timeout(5, 0);
  streamer.Get("/stream", [&](const char* data, std::size_t n) {
    buffer.append(data, n);
    std::size_t pos;
    while ((pos = buffer.find('\n')) != std::string::npos) {
      const json line = json::parse(buffer.substr(0, pos));
      buffer.erase(0, pos + 1);
      saw_flexion = saw_flexion && line.at("mode") == "Flexion";
      EXPECT_TRUE(line.contains("filtered_emg"));
      EXPECT_TRUE(line.contains("servo_theta"));
      ++lines;
    }
    return std::chrono::steady_clock::now() < until;
  });
  EXPECT_GE(lines, 20u);
  EXPECT_TRUE(saw_flexion);
  server.Stop();
}

}  // namespace
}  // namespace midas::service

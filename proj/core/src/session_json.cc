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

#include <string>

#include "json.hpp"
#include "midas/error.h"
#include "midas/session.h"

namespace midas {

using nlohmann::json;

namespace {

StageStatus ParseStageStatus(const std::string& name) {
  if (name == "Running") return StageStatus::kRunning;
  if (name == "Complete") return StageStatus::kComplete;
  if (name == "TimedOut") return StageStatus::kTimedOut;
  throw Error(ErrorCode::kParseError, "unknown stage status '" + name + "'");
}

json StageJson(const StageState& s) {
  return {{"index", s.index},
          {"status", StageStatusName(s.status)},
          {"elapsed_ms", s.elapsed_ms},
          {"squeezes", s.squeezes_done},
          {"cup_level", s.cup_level},
          {"cup_tier", s.cup_tier},
          {"score", s.score}};
}

}  // namespace

std::string ReportToJson(const SessionReport& report) {
  json stages = json::array();
  for (const StageSummary& s : report.stages) {
    stages.push_back({{"index", s.index},
                      {"status", StageStatusName(s.status)},
                      {"squeezes", s.squeezes},
                      {"score", s.score},
                      {"cup_tier", s.cup_tier},
                      {"cup_level", s.cup_level},
                      {"elapsed_ms", s.elapsed_ms}});
  }
  json j = {{"total_score", report.total_score},
            {"squeezes", report.squeezes},
            {"stages", stages},
            {"scent_emissions", report.scent_emissions},
            {"frames_sent", report.frames_sent},
            {"frames_dropped", report.frames_dropped}};
  return j.dump(2) + "\n";
}

SessionReport ReportFromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    SessionReport r;
    r.total_score = j.at("total_score").get<double>();
    r.squeezes = j.at("squeezes").get<int>();
    for (const json& s : j.at("stages")) {
      StageSummary st;
      st.index = s.at("index").get<int>();
      st.status = ParseStageStatus(s.at("status").get<std::string>());
      st.squeezes = s.at("squeezes").get<int>();
      st.score = s.at("score").get<double>();
      st.cup_tier = s.at("cup_tier").get<int>();
      st.cup_level = s.at("cup_level").get<double>();
      st.elapsed_ms = s.at("elapsed_ms").get<std::int64_t>();
      r.stages.push_back(st);
    }
    r.scent_emissions = j.at("scent_emissions").get<int>();
    r.frames_sent = j.at("frames_sent").get<std::uint64_t>();
    r.frames_dropped = j.at("frames_dropped").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("session report: ") + e.what());
  }
}

std::string SnapshotToJson(const SessionSnapshot& s) {
  json j = {{"t_ms", s.t_ms},
            {"status", GamePhaseName(s.phase)},
            {"mode", IntentModeName(s.mode)},
            {"filtered_emg", s.filtered_emg},
            {"intent_active", s.intent_active},
            {"servo", {{"theta", s.servo_theta}, {"target", s.servo_target},
                       {"openness", s.openness}}},
            {"stage", s.stage ? StageJson(*s.stage) : json(nullptr)},
            {"total_score", s.total_score},
            {"squeezes", s.squeezes},
            {"scent", {{"enabled", s.scent_enabled}, {"emitting", s.scent_emitting},
                       {"emissions", s.scent_emissions}}},
            {"thresholds", {{"theta_on", s.theta_on}, {"theta_off", s.theta_off}}},
            {"frames_sent", s.frames_sent},
            {"frames_dropped", s.frames_dropped}};
  return j.dump();
}

std::string TelemetryToJson(const SessionSnapshot& s) {
  json stage = nullptr;
  if (s.stage) {
    stage = {{"index", s.stage->index},
             {"cup_level", s.stage->cup_level},
             {"squeezes", s.stage->squeezes_done},
             {"score", s.stage->score}};
  }
  json j = {{"t_ms", s.t_ms},
            {"status", GamePhaseName(s.phase)},
            {"mode", IntentModeName(s.mode)},
            {"filtered_emg", s.filtered_emg},
            {"intent_state", s.intent_active ? "On" : "Off"},
            {"servo_theta", s.servo_theta},
            {"stage", stage},
            {"scent", {{"enabled", s.scent_enabled}, {"emitting", s.scent_emitting}}}};
  return j.dump();
}

}  // namespace midas

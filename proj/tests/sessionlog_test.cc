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

#include "midas/error.h"
#include "midas/sessionlog.h"

namespace midas {
namespace {

ErrorCode ParseCode(std::string_view text) {
  try {
    SessionLog::ParseCsv(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed";
  return ErrorCode::kInvalidArgument;
}

TEST(SessionLogTest, CsvRoundTrip) {
  SessionLog log;
  log.Append({0, RecordKind::kGame, 5, 0, 0, "cfg.n_stages"});
  log.Append({0, RecordKind::kEmg, 101, 100.5, 0, ""});
  log.Append({3, RecordKind::kServo, 1.058823529, 180, 0.00017, ""});
  log.Append({3, RecordKind::kNet, 7, 2, 255, "drop"});
  log.Append({9, RecordKind::kIntent, 0, 1, -2.5, "rx"});
  const std::string csv = log.ToCsv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t_ms,kind,k1,k2,k3,note");
  EXPECT_NE(csv.find("3,Servo,1.058824,180,0.00017,\n"), std::string::npos);
  const SessionLog back = SessionLog::ParseCsv(csv);
  ASSERT_EQ(back.size(), log.size());
  EXPECT_EQ(back.records()[3], log.records()[3]);
  EXPECT_EQ(back.ToCsv(), csv);
}

TEST(SessionLogTest, AppendRules) {
  SessionLog log;
  log.Append({5, RecordKind::kCtl, 0, 0, 0, "StartStage"});
  try {
    log.Append({4, RecordKind::kCtl, 0, 0, 0, ""});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTimestampRegression);
  }
  EXPECT_THROW(log.Append({6, RecordKind::kCtl, 0, 0, 0, "a,b"}), Error);
  EXPECT_THROW(log.Append({6, RecordKind::kCtl, 0, 0, 0, "a\nb"}), Error);
}

TEST(SessionLogTest, MalformedInputs) {
  const std::string header = "t_ms,kind,k1,k2,k3,note\n";
  EXPECT_EQ(ParseCode("bogus\n"), ErrorCode::kMalformedRecord);
  EXPECT_EQ(ParseCode(header + "1,Emg,1,2,3\n"), ErrorCode::kMalformedRecord);
  EXPECT_EQ(ParseCode(header + "1,Nope,1,2,3,\n"), ErrorCode::kMalformedRecord);
  EXPECT_EQ(ParseCode(header + "x,Emg,1,2,3,\n"), ErrorCode::kMalformedRecord);
  EXPECT_EQ(ParseCode(header + "5,Emg,1,2,3,\n4,Emg,1,2,3,\n"), ErrorCode::kMalformedRecord);
  EXPECT_EQ(ParseCode(header + "1,Emg,1,2,3,"), ErrorCode::kMalformedRecord);
  try {
    SessionLog::ParseCsv(header + "1,Emg,1,2,3,\n2,Emg,z,2,3,\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_TRUE(SessionLog::ParseCsv(header).empty());
}

TEST(ExtractReplayTest, SelectsReplayableRecords) {
  SessionLog log;
  log.Append({0, RecordKind::kGame, 3, 0, 0, "cfg.n_stages"});
  log.Append({0, RecordKind::kGame, 1, 0, 0, "StageStarted"});
  log.Append({1, RecordKind::kIntent, 0, 0, 1, "tx"});
  log.Append({7, RecordKind::kIntent, 0, 0, 1, "rx"});
  log.Append({8, RecordKind::kNet, 2, 2, 3, "tx"});
  log.Append({8, RecordKind::kNet, 2, 2, 3, "drop"});
  log.Append({9, RecordKind::kCtl, 0, 0, 0, "StopStage"});
  log.Append({9, RecordKind::kScent, 0, 0, 0, "req"});
  log.Append({9, RecordKind::kScent, 1500, 0, 0, "release"});
  log.Append({12, RecordKind::kEmg, 1, 1, 0, ""});
  const ReplayStream s = ExtractReplay(log);
  EXPECT_EQ(s.config.at("n_stages"), 3);
  using T = ReplayEvent::Type;
  std::vector<T> types;
  for (const auto& e : s.events) types.push_back(e.type);
  EXPECT_EQ(types, (std::vector<T>{T::kIntent, T::kFrameSent, T::kFrameDropped, T::kControl,
                                   T::kScentRequest, T::kEnd}));
  EXPECT_EQ(s.events.back().record.t_ms, 12);
}

}  // namespace
}  // namespace midas

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

#ifndef MIDAS_SESSIONLOG_H_
#define MIDAS_SESSIONLOG_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace midas {

enum class RecordKind { kEmg, kIntent, kServo, kGame, kScent, kNet, kCtl };

const char* RecordKindName(RecordKind kind);
std::optional<RecordKind> ParseRecordKind(std::string_view name);

// k-field meaning by kind:
//   Emg     k1 raw, k2 filtered
//   Intent  k1 0=Onset/1=Offset, k2 0=Extension/1=Flexion, k3 origin t_ms;
//           note "tx" at detection, "rx" on arrival at the game
//   Servo   k1 theta, k2 target, k3 finger openness
//   Game    note names the event ("cfg.<name>" records carry config in k1)
//   Scent   note "req" / "release" / "suppressed"; k1 emitting_until_ms
//   Net     note "tx" / "drop"; k1 msg type, k2 src, k3 dst
//   Ctl     note names the action; k1..k3 action arguments
struct LogRecord {
  std::int64_t t_ms = 0;
  RecordKind kind = RecordKind::kCtl;
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  std::string note;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

// Append-only, ordered by (t_ms, append order).
class SessionLog {
 public:
  // Throws kTimestampRegression if t_ms precedes the last record, and
  // kInvalidArgument if the note contains a comma or line break.
  void Append(LogRecord record);

  const std::vector<LogRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // `t_ms,kind,k1,k2,k3,note`, one record per LF-terminated line, numbers in
  // plain decimal.
  void WriteCsv(std::ostream& out) const;
  std::string ToCsv() const;

  // Throws kMalformedRecord naming the 1-based line. A final line without its
  // terminating LF counts as truncated.
  static SessionLog ParseCsv(std::string_view text);
  static SessionLog ReadCsvFile(const std::string& path);

 private:
  std::vector<LogRecord> records_;
};

// Events a fresh game engine needs to reproduce a logged session.
struct ReplayEvent {
  enum class Type {
    kIntent,      // intent arrival at the game
    kControl,     // accepted control action
    kScentRequest,
    kFrameSent,
    kFrameDropped,
    kEnd,         // last logged tick
  };
  Type type = Type::kEnd;
  LogRecord record;
};

struct ReplayStream {
  std::map<std::string, double> config;  // from "cfg.<name>" records
  std::vector<ReplayEvent> events;
};

ReplayStream ExtractReplay(const SessionLog& log);

}  // namespace midas

#endif  // MIDAS_SESSIONLOG_H_

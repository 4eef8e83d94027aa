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

#include "midas/sessionlog.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include "midas/error.h"
#include "text_util.h"

namespace midas {

namespace {

constexpr std::string_view kHeader = "t_ms,kind,k1,k2,k3,note";

[[noreturn]] void Malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

const char* RecordKindName(RecordKind kind) {
  switch (kind) {
    case RecordKind::kEmg: return "Emg";
    case RecordKind::kIntent: return "Intent";
    case RecordKind::kServo: return "Servo";
    case RecordKind::kGame: return "Game";
    case RecordKind::kScent: return "Scent";
    case RecordKind::kNet: return "Net";
    case RecordKind::kCtl: return "Ctl";
  }
  return "?";
}

std::optional<RecordKind> ParseRecordKind(std::string_view name) {
  for (RecordKind k : {RecordKind::kEmg, RecordKind::kIntent, RecordKind::kServo,
                       RecordKind::kGame, RecordKind::kScent, RecordKind::kNet,
                       RecordKind::kCtl}) {
    if (name == RecordKindName(k)) return k;
  }
  return std::nullopt;
}

void SessionLog::Append(LogRecord record) {
  if (!records_.empty() && record.t_ms < records_.back().t_ms) {
    throw Error(ErrorCode::kTimestampRegression,
                "record at " + std::to_string(record.t_ms) + " ms after one at " +
                    std::to_string(records_.back().t_ms) + " ms");
  }
  if (record.note.find_first_of(",\n\r") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "log note may not contain ',' or line breaks");
  }
  records_.push_back(std::move(record));
}

void SessionLog::WriteCsv(std::ostream& out) const {
  out << kHeader << '\n';
  for (const LogRecord& r : records_) {
    out << r.t_ms << ',' << RecordKindName(r.kind) << ','
        << internal::FormatDecimal(r.k1) << ',' << internal::FormatDecimal(r.k2) << ','
        << internal::FormatDecimal(r.k3) << ',' << r.note << '\n';
  }
}

std::string SessionLog::ToCsv() const {
  std::ostringstream out;
  WriteCsv(out);
  return out.str();
}

SessionLog SessionLog::ParseCsv(std::string_view text) {
  SessionLog log;
  if (text.empty()) return log;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) Malformed(line_no, "truncated line (no LF)");
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line_no == 1) {
      if (line != kHeader) Malformed(1, "expected header '" + std::string(kHeader) + "'");
      continue;
    }
    const auto fields = internal::SplitCommas(line);
    if (fields.size() != 6) {
      Malformed(line_no, "expected 6 fields, found " + std::to_string(fields.size()));
    }
    LogRecord rec;
    const auto t = internal::ParseInt(fields[0]);
    const auto kind = ParseRecordKind(fields[1]);
    const auto k1 = internal::ParseDouble(fields[2]);
    const auto k2 = internal::ParseDouble(fields[3]);
    const auto k3 = internal::ParseDouble(fields[4]);
    if (!t) Malformed(line_no, "bad t_ms");
    if (!kind) Malformed(line_no, "unknown kind '" + std::string(fields[1]) + "'");
    if (!k1 || !k2 || !k3) Malformed(line_no, "bad numeric field");
    rec.t_ms = *t;
    rec.kind = *kind;
    rec.k1 = *k1;
    rec.k2 = *k2;
    rec.k3 = *k3;
    rec.note = std::string(fields[5]);
    if (!log.records_.empty() && rec.t_ms < log.records_.back().t_ms) {
      Malformed(line_no, "timestamp regression");
    }
    log.records_.push_back(std::move(rec));
  }
  return log;
}

SessionLog SessionLog::ReadCsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open log file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCsv(buf.str());
}

ReplayStream ExtractReplay(const SessionLog& log) {
  ReplayStream stream;
  using Type = ReplayEvent::Type;
  for (const LogRecord& r : log.records()) {
    switch (r.kind) {
      case RecordKind::kIntent:
        if (r.note == "rx") stream.events.push_back({Type::kIntent, r});
        break;
      case RecordKind::kCtl:
        stream.events.push_back({Type::kControl, r});
        break;
      case RecordKind::kScent:
        if (r.note == "req") stream.events.push_back({Type::kScentRequest, r});
        break;
      case RecordKind::kNet:
        if (r.note == "tx") stream.events.push_back({Type::kFrameSent, r});
        if (r.note == "drop") stream.events.push_back({Type::kFrameDropped, r});
        break;
      case RecordKind::kGame:
        if (r.note.starts_with("cfg.")) stream.config[r.note.substr(4)] = r.k1;
        break;
      default:
        break;
    }
  }
  if (!log.empty()) {
    LogRecord end;
    end.t_ms = log.records().back().t_ms;
    stream.events.push_back({Type::kEnd, end});
  }
  return stream;
}

}  // namespace midas

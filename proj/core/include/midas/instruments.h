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

#ifndef MIDAS_INSTRUMENTS_H_
#define MIDAS_INSTRUMENTS_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "midas/scales.h"

namespace midas::scales {

// Instrument response files: CSV, one respondent (or rating) per row, with an
// optional `respondent` and `session` column. Required columns:
//   mas     supine_to_side_lying ... advanced_hand_activities, general_tonus
//   moca    raw, education_years
//   srms    q1 .. q7
//   sam     pre_valence, pre_arousal, pre_dominance,
//           post_valence, post_arousal, post_dominance
//   ueq     supportive, easy, efficient, clear, exciting, interesting,
//           inventive, leading_edge
//   whoqol  any number of physical_*, psychological_*, social_*,
//           environment_* columns (blank cells are skipped)
enum class Instrument { kMas, kMoca, kSrms, kSam, kUeq, kWhoqol };

const char* InstrumentName(Instrument instrument);
std::optional<Instrument> ParseInstrument(std::string_view name);

struct RespondentScore {
  std::string respondent;
  std::string session;
  std::vector<std::pair<std::string, double>> values;
  std::string classification;  // MAS tonus / MoCA normality, else empty
};

struct UnionSummary {
  std::string row;
  std::string name;  // "agree", "disagree"
  Percentage percentage;
};

struct LikertSection {
  std::string group;  // "all" or "session <s>"
  LikertTable table;
  std::vector<LikertRowSummary> rows;
  std::vector<UnionSummary> unions;
};

struct InstrumentReport {
  Instrument instrument = Instrument::kSrms;
  std::vector<RespondentScore> respondents;
  std::vector<LikertSection> likert;
  std::vector<std::pair<std::string, double>> summary;

  std::string ToJson() const;
  std::string ToText() const;
};

// Throws kParseError (naming row/column), kOutOfRange (naming the cell) or
// kEmptyDomain.
InstrumentReport ScoreInstrumentCsv(Instrument instrument, std::string_view csv);

}  // namespace midas::scales

#endif  // MIDAS_INSTRUMENTS_H_

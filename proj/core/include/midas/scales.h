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

#ifndef MIDAS_SCALES_H_
#define MIDAS_SCALES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace midas::scales {

// Motor Assessment Scale: eight items on 0..6 summed out of 48; general tonus
// is read separately (4 normal, below 4 hypertonus, above 4 hypotonus).
struct MasResponse {
  std::array<int, 8> items{};
  int general_tonus = 4;
};

inline constexpr std::array<std::string_view, 8> kMasItems = {
    "supine_to_side_lying", "supine_to_sitting", "balanced_sitting",
    "sitting_to_standing",  "walking",           "upper_arm_function",
    "hand_movements",       "advanced_hand_activities"};

enum class TonusClass { kNormal, kHypertonus, kHypotonus };

const char* TonusClassName(TonusClass c);

struct MasScore {
  int total = 0;
  TonusClass tonus = TonusClass::kNormal;
};

MasScore ScoreMas(const MasResponse& r);

// Montreal Cognitive Assessment: +1 for 12 or fewer years of education,
// capped at 30; 26 and above is normal.
struct MocaResponse {
  int raw = 0;
  int education_years = 0;
};

struct MocaScore {
  int adjusted = 0;
  bool normal = false;
};

inline constexpr int kMocaNormalCutoff = 26;

MocaScore ScoreMoca(const MocaResponse& r);

enum class Severity { kLight, kMild, kLightMild, kModerate, kSevere };

std::optional<Severity> ParseSeverity(std::string_view name);

// Study inclusion: age 21..65, rapid cognitive screen strictly above 7, light
// to mild stroke.
bool Eligible(int age_years, int rcs_score, Severity severity);

// Stroke Rehabilitation Motivation Scale short form: 7 items on 1..5.
struct SrmsResponse {
  std::array<int, 7> items{};
};

int ScoreSrms(const SrmsResponse& r);

// User experience questionnaire: 8 bipolar items on 1..7.
struct UeqResponse {
  std::array<int, 8> items{};
};

inline constexpr std::array<std::string_view, 8> kUeqItems = {
    "supportive", "easy",        "efficient", "clear",
    "exciting",   "interesting", "inventive", "leading_edge"};

int ScoreUeq(const UeqResponse& r);

// Self-Assessment Manikin on 1..5 per dimension.
struct SamResponse {
  int valence = 3;
  int arousal = 3;
  int dominance = 3;
};

struct SamDelta {
  int valence = 0;
  int arousal = 0;
  int dominance = 0;

  friend bool operator==(const SamDelta&, const SamDelta&) = default;
};

enum class SamDimension { kValence, kArousal, kDominance };

// Anchor label for a rating, e.g. valence 5 -> "Pleasant".
std::string_view SamLabel(SamDimension dim, int rating);

// post - pre per dimension. Throws kOutOfRange for ratings outside 1..5.
SamDelta SamDifference(const SamResponse& pre, const SamResponse& post);

enum class WhoqolDomain { kPhysical, kPsychological, kSocial, kEnvironment };

inline constexpr std::array<std::string_view, 4> kWhoqolDomains = {
    "physical", "psychological", "social", "environment"};

struct WhoqolResponse {
  std::array<std::vector<int>, 4> domains;  // item scores 1..5, by WhoqolDomain
};

// Per-domain ((mean - 1) / 4) * 100. Throws kEmptyDomain.
std::array<double, 4> ScoreWhoqol(const WhoqolResponse& r);

struct LikertRow {
  std::string label;
  std::vector<int> counts;  // one per category
};

struct LikertTable {
  std::vector<std::string> categories;
  std::vector<LikertRow> rows;
  int n_respondents = 0;
};

// A share of respondents expressed three ways.
struct Percentage {
  int count = 0;
  int n = 0;
  double exact = 0.0;  // 100 * count / n
  double tenths = 0.0; // rounded half-up to one decimal
  int display = 0;     // rounded half-up to an integer

  static Percentage Of(int count, int n);
};

struct LikertRowSummary {
  std::string label;
  std::vector<Percentage> percentages;
};

// Throws kInconsistentRow when a row's counts do not sum to n_respondents
// (or its width differs from the category list).
std::vector<LikertRowSummary> AggregateLikert(const LikertTable& table);

// Union over categories: counts are summed first, then divided.
Percentage UnionPercentage(const LikertRow& row, std::span<const int> category_indices,
                           int n_respondents);

}  // namespace midas::scales

#endif  // MIDAS_SCALES_H_

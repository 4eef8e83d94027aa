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

#include "midas/scales.h"

#include <numeric>
#include <string>

#include "midas/error.h"

namespace midas::scales {

namespace {

void CheckRange(int v, int lo, int hi, std::string_view what) {
  if (v < lo || v > hi) {
    throw Error(ErrorCode::kOutOfRange, std::string(what) + " = " + std::to_string(v) +
                                            " outside [" + std::to_string(lo) + ", " +
                                            std::to_string(hi) + "]");
  }
}

// round(num / den) with halves rounded up; num >= 0, den > 0.
std::int64_t RoundHalfUp(std::int64_t num, std::int64_t den) { return (2 * num + den) / (2 * den); }

}  // namespace

const char* TonusClassName(TonusClass c) {
  switch (c) {
    case TonusClass::kNormal: return "Normal";
    case TonusClass::kHypertonus: return "Hypertonus";
    case TonusClass::kHypotonus: return "Hypotonus";
  }
  return "?";
}

MasScore ScoreMas(const MasResponse& r) {
  MasScore s;
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    CheckRange(r.items[i], 0, 6, kMasItems[i]);
    s.total += r.items[i];
  }
  CheckRange(r.general_tonus, 0, 6, "general_tonus");
  if (r.general_tonus == 4) {
    s.tonus = TonusClass::kNormal;
  } else if (r.general_tonus < 4) {
    s.tonus = TonusClass::kHypertonus;
  } else {
    s.tonus = TonusClass::kHypotonus;
  }
  return s;
}

MocaScore ScoreMoca(const MocaResponse& r) {
  CheckRange(r.raw, 0, 30, "raw");
  if (r.education_years < 0) {
    throw Error(ErrorCode::kOutOfRange, "education_years must be non-negative");
  }
  MocaScore s;
  s.adjusted = std::min(30, r.raw + (r.education_years <= 12 ? 1 : 0));
  s.normal = s.adjusted >= kMocaNormalCutoff;
  return s;
}

std::optional<Severity> ParseSeverity(std::string_view name) {
  if (name == "Light" || name == "light") return Severity::kLight;
  if (name == "Mild" || name == "mild") return Severity::kMild;
  if (name == "LightMild" || name == "Light/mild" || name == "light/mild") {
    return Severity::kLightMild;
  }
  if (name == "Moderate" || name == "moderate") return Severity::kModerate;
  if (name == "Severe" || name == "severe") return Severity::kSevere;
  return std::nullopt;
}

bool Eligible(int age_years, int rcs_score, Severity severity) {
  const bool light_to_mild = severity == Severity::kLight || severity == Severity::kMild ||
                             severity == Severity::kLightMild;
  return age_years >= 21 && age_years <= 65 && rcs_score > 7 && light_to_mild;
}

int ScoreSrms(const SrmsResponse& r) {
  int total = 0;
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    CheckRange(r.items[i], 1, 5, "q" + std::to_string(i + 1));
    total += r.items[i];
  }
  return total;
}

int ScoreUeq(const UeqResponse& r) {
  int total = 0;
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    CheckRange(r.items[i], 1, 7, kUeqItems[i]);
    total += r.items[i];
  }
  return total;
}

std::string_view SamLabel(SamDimension dim, int rating) {
  static constexpr std::array<std::string_view, 5> kValence = {
      "Unpleasant", "Unsatisfied", "Neutral", "Pleased", "Pleasant"};
  static constexpr std::array<std::string_view, 5> kArousal = {"Calm", "Dull", "Neutral",
                                                               "Wide-awake", "Excited"};
  static constexpr std::array<std::string_view, 5> kDominance = {
      "Independent", "Powerful", "Neutral", "Powerlessness", "Dependent"};
  CheckRange(rating, 1, 5, "SAM rating");
  const auto i = static_cast<std::size_t>(rating - 1);
  switch (dim) {
    case SamDimension::kValence: return kValence[i];
    case SamDimension::kArousal: return kArousal[i];
    case SamDimension::kDominance: return kDominance[i];
  }
  return {};
}

SamDelta SamDifference(const SamResponse& pre, const SamResponse& post) {
  for (const SamResponse* r : {&pre, &post}) {
    CheckRange(r->valence, 1, 5, "valence");
    CheckRange(r->arousal, 1, 5, "arousal");
    CheckRange(r->dominance, 1, 5, "dominance");
  }
  return {post.valence - pre.valence, post.arousal - pre.arousal,
          post.dominance - pre.dominance};
}

std::array<double, 4> ScoreWhoqol(const WhoqolResponse& r) {
  std::array<double, 4> out{};
  for (std::size_t d = 0; d < 4; ++d) {
    const auto& items = r.domains[d];
    if (items.empty()) {
      throw Error(ErrorCode::kEmptyDomain,
                  "WHOQOL domain '" + std::string(kWhoqolDomains[d]) + "' has no items");
    }
    for (int v : items) CheckRange(v, 1, 5, kWhoqolDomains[d]);
    const double mean =
        static_cast<double>(std::accumulate(items.begin(), items.end(), 0)) / items.size();
    out[d] = (mean - 1.0) / 4.0 * 100.0;
  }
  return out;
}

Percentage Percentage::Of(int count, int n) {
  if (n <= 0 || count < 0) {
    throw Error(ErrorCode::kInvalidArgument, "percentage needs n > 0 and count >= 0");
  }
  Percentage p;
  p.count = count;
  p.n = n;
  p.exact = 100.0 * count / n;
  p.tenths = static_cast<double>(RoundHalfUp(1000LL * count, n)) / 10.0;
  p.display = static_cast<int>(RoundHalfUp(100LL * count, n));
  return p;
}

std::vector<LikertRowSummary> AggregateLikert(const LikertTable& table) {
  if (table.n_respondents <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "Likert table needs n_respondents > 0");
  }
  std::vector<LikertRowSummary> out;
  for (const LikertRow& row : table.rows) {
    if (row.counts.size() != table.categories.size()) {
      throw Error(ErrorCode::kInconsistentRow,
                  "row '" + row.label + "' has " + std::to_string(row.counts.size()) +
                      " counts for " + std::to_string(table.categories.size()) +
                      " categories");
    }
    const int sum = std::accumulate(row.counts.begin(), row.counts.end(), 0);
    if (sum != table.n_respondents) {
      throw Error(ErrorCode::kInconsistentRow,
                  "row '" + row.label + "' counts sum to " + std::to_string(sum) +
                      ", expected " + std::to_string(table.n_respondents));
    }
    LikertRowSummary summary;
    summary.label = row.label;
    for (int c : row.counts) summary.percentages.push_back(Percentage::Of(c, table.n_respondents));
    out.push_back(std::move(summary));
  }
  return out;
}

Percentage UnionPercentage(const LikertRow& row, std::span<const int> category_indices,
                           int n_respondents) {
  int count = 0;
  for (int i : category_indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= row.counts.size()) {
      throw Error(ErrorCode::kInvalidArgument, "category index out of range");
    }
    count += row.counts[static_cast<std::size_t>(i)];
  }
  return Percentage::Of(count, n_respondents);
}

}  // namespace midas::scales

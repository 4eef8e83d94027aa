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

#include "midas/instruments.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"
#include "midas/error.h"
#include "text_util.h"

namespace midas::scales {

namespace {

using nlohmann::json;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

Table ParseCsv(std::string_view text) {
  Table t;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = internal::Trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    for (auto cell : internal::SplitCommas(line)) cells.emplace_back(internal::Trim(cell));
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw Error(ErrorCode::kParseError,
                  "row " + std::to_string(line_no) + ": expected " +
                      std::to_string(t.header.size()) + " columns, found " +
                      std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.line_numbers.push_back(line_no);
  }
  if (t.header.empty()) throw Error(ErrorCode::kParseError, "empty CSV: no header row");
  if (t.rows.empty()) throw Error(ErrorCode::kParseError, "CSV has no data rows");
  return t;
}

class RowReader {
 public:
  RowReader(const Table& t, std::size_t r) : t_(t), r_(r) {}

  std::optional<std::size_t> Column(std::string_view name) const {
    for (std::size_t i = 0; i < t_.header.size(); ++i) {
      if (t_.header[i] == name) return i;
    }
    return std::nullopt;
  }

  std::string Text(std::string_view name) const {
    const auto c = Column(name);
    return c ? t_.rows[r_][*c] : std::string();
  }

  std::string Where(std::string_view column) const {
    return "row " + std::to_string(t_.line_numbers[r_]) + ", column " + std::string(column);
  }

  std::optional<int> MaybeInt(std::size_t col, int lo, int hi) const {
    const std::string& cell = t_.rows[r_][col];
    if (cell.empty()) return std::nullopt;
    const auto v = internal::ParseInt(cell);
    if (!v) {
      throw Error(ErrorCode::kParseError,
                  Where(t_.header[col]) + ": '" + cell + "' is not an integer");
    }
    if (*v < lo || *v > hi) {
      throw Error(ErrorCode::kOutOfRange, Where(t_.header[col]) + ": value " +
                                              std::to_string(*v) + " outside [" +
                                              std::to_string(lo) + ", " +
                                              std::to_string(hi) + "]");
    }
    return static_cast<int>(*v);
  }

  int Int(std::string_view name, int lo, int hi) const {
    const auto c = Column(name);
    if (!c) {
      throw Error(ErrorCode::kParseError, "missing column '" + std::string(name) + "'");
    }
    const auto v = MaybeInt(*c, lo, hi);
    if (!v) throw Error(ErrorCode::kParseError, Where(name) + ": empty cell");
    return *v;
  }

 private:
  const Table& t_;
  std::size_t r_;
};

RespondentScore Identify(const RowReader& row, std::size_t index) {
  RespondentScore s;
  s.respondent = row.Text("respondent");
  if (s.respondent.empty()) s.respondent = std::to_string(index + 1);
  s.session = row.Text("session");
  return s;
}

const std::vector<std::string> kSrmsCategories = {
    "completely_disagree", "disagree", "neither", "somewhat_agree", "completely_agree"};
const std::vector<std::string> kUeqCategories = {
    "completely_disagree", "disagree",     "slightly_disagree", "neither",
    "slightly_agree",      "agree",        "completely_agree"};

struct UnionDef {
  std::string name;
  std::vector<int> categories;
};

// Builds one Likert section per group ("all", then each session in order of
// first appearance).
std::vector<LikertSection> BuildLikert(const std::vector<std::vector<int>>& ratings,
                                       const std::vector<std::string>& sessions,
                                       const std::vector<std::string>& row_labels,
                                       const std::vector<std::string>& categories, int min_value,
                                       const std::vector<UnionDef>& unions) {
  std::vector<std::string> groups = {""};
  for (const auto& s : sessions) {
    if (!s.empty() && std::find(groups.begin(), groups.end(), s) == groups.end()) {
      groups.push_back(s);
    }
  }
  std::vector<LikertSection> out;
  for (const std::string& group : groups) {
    LikertSection section;
    section.group = group.empty() ? "all" : "session " + group;
    section.table.categories = categories;
    for (const auto& label : row_labels) {
      section.table.rows.push_back({label, std::vector<int>(categories.size(), 0)});
    }
    for (std::size_t r = 0; r < ratings.size(); ++r) {
      if (!group.empty() && sessions[r] != group) continue;
      ++section.table.n_respondents;
      for (std::size_t q = 0; q < row_labels.size(); ++q) {
        ++section.table.rows[q].counts[static_cast<std::size_t>(ratings[r][q] - min_value)];
      }
    }
    section.rows = AggregateLikert(section.table);
    for (const auto& row : section.table.rows) {
      for (const auto& u : unions) {
        section.unions.push_back(
            {row.label, u.name, UnionPercentage(row, u.categories, section.table.n_respondents)});
      }
    }
    out.push_back(std::move(section));
  }
  return out;
}

json PercentageJson(const Percentage& p) {
  return {{"count", p.count}, {"n", p.n}, {"exact", p.exact}, {"percent", p.tenths},
          {"display", p.display}};
}

std::string Fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

const char* InstrumentName(Instrument instrument) {
  switch (instrument) {
    case Instrument::kMas: return "mas";
    case Instrument::kMoca: return "moca";
    case Instrument::kSrms: return "srms";
    case Instrument::kSam: return "sam";
    case Instrument::kUeq: return "ueq";
    case Instrument::kWhoqol: return "whoqol";
  }
  return "?";
}

std::optional<Instrument> ParseInstrument(std::string_view name) {
  for (Instrument i : {Instrument::kMas, Instrument::kMoca, Instrument::kSrms, Instrument::kSam,
                       Instrument::kUeq, Instrument::kWhoqol}) {
    if (name == InstrumentName(i)) return i;
  }
  return std::nullopt;
}

InstrumentReport ScoreInstrumentCsv(Instrument instrument, std::string_view csv) {
  const Table table = ParseCsv(csv);
  InstrumentReport report;
  report.instrument = instrument;
  std::vector<std::vector<int>> ratings;
  std::vector<std::string> sessions;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const RowReader row(table, r);
    RespondentScore score = Identify(row, r);
    switch (instrument) {
      case Instrument::kMas: {
        MasResponse resp;
        for (std::size_t i = 0; i < kMasItems.size(); ++i) resp.items[i] = row.Int(kMasItems[i], 0, 6);
        resp.general_tonus = row.Int("general_tonus", 0, 6);
        const MasScore s = ScoreMas(resp);
        score.values.push_back({"total", s.total});
        score.values.push_back({"general_tonus", resp.general_tonus});
        score.classification = TonusClassName(s.tonus);
        break;
      }
      case Instrument::kMoca: {
        MocaResponse resp{row.Int("raw", 0, 30), row.Int("education_years", 0, 100)};
        const MocaScore s = ScoreMoca(resp);
        score.values.push_back({"adjusted", s.adjusted});
        score.classification = s.normal ? "Normal" : "BelowCutoff";
        break;
      }
      case Instrument::kSrms: {
        SrmsResponse resp;
        std::vector<int> items;
        for (std::size_t i = 0; i < resp.items.size(); ++i) {
          resp.items[i] = row.Int("q" + std::to_string(i + 1), 1, 5);
          items.push_back(resp.items[i]);
        }
        score.values.push_back({"total", ScoreSrms(resp)});
        ratings.push_back(std::move(items));
        break;
      }
      case Instrument::kSam: {
        SamResponse pre{row.Int("pre_valence", 1, 5), row.Int("pre_arousal", 1, 5),
                        row.Int("pre_dominance", 1, 5)};
        SamResponse post{row.Int("post_valence", 1, 5), row.Int("post_arousal", 1, 5),
                         row.Int("post_dominance", 1, 5)};
        const SamDelta d = SamDifference(pre, post);
        score.values.push_back({"delta_valence", d.valence});
        score.values.push_back({"delta_arousal", d.arousal});
        score.values.push_back({"delta_dominance", d.dominance});
        break;
      }
      case Instrument::kUeq: {
        UeqResponse resp;
        std::vector<int> items;
        for (std::size_t i = 0; i < kUeqItems.size(); ++i) {
          resp.items[i] = row.Int(kUeqItems[i], 1, 7);
          items.push_back(resp.items[i]);
        }
        score.values.push_back({"total", ScoreUeq(resp)});
        ratings.push_back(std::move(items));
        break;
      }
      case Instrument::kWhoqol: {
        WhoqolResponse resp;
        for (std::size_t c = 0; c < table.header.size(); ++c) {
          for (std::size_t d = 0; d < kWhoqolDomains.size(); ++d) {
            if (table.header[c].starts_with(std::string(kWhoqolDomains[d]) + "_")) {
              if (auto v = row.MaybeInt(c, 1, 5)) resp.domains[d].push_back(*v);
            }
          }
        }
        const auto domains = ScoreWhoqol(resp);
        for (std::size_t d = 0; d < domains.size(); ++d) {
          score.values.push_back({std::string(kWhoqolDomains[d]), domains[d]});
        }
        break;
      }
    }
    sessions.push_back(score.session);
    report.respondents.push_back(std::move(score));
  }

  if (instrument == Instrument::kSrms) {
    std::vector<std::string> labels;
    for (int i = 1; i <= 7; ++i) labels.push_back("q" + std::to_string(i));
    report.likert = BuildLikert(ratings, sessions, labels, kSrmsCategories, 1,
                                {{"agree", {3, 4}}});
  }
  if (instrument == Instrument::kUeq) {
    std::vector<std::string> labels(kUeqItems.begin(), kUeqItems.end());
    report.likert = BuildLikert(ratings, sessions, labels, kUeqCategories, 1,
                                {{"agree", {4, 5, 6}}, {"disagree", {0, 1, 2}}});
    int above_40 = 0;
    for (const auto& r : report.respondents) above_40 += r.values.front().second > 40 ? 1 : 0;
    const auto n = static_cast<int>(report.respondents.size());
    report.summary.push_back({"scores_above_40_percent", Percentage::Of(above_40, n).exact});
  }

  if (!report.respondents.empty()) {
    const std::size_t n_values = report.respondents.front().values.size();
    for (std::size_t v = 0; v < n_values; ++v) {
      double sum = 0.0;
      for (const auto& r : report.respondents) sum += r.values[v].second;
      report.summary.push_back({"mean_" + report.respondents.front().values[v].first,
                                sum / static_cast<double>(report.respondents.size())});
    }
  }
  return report;
}

std::string InstrumentReport::ToJson() const {
  json j;
  j["instrument"] = InstrumentName(instrument);
  j["n_rows"] = respondents.size();
  json rows = json::array();
  for (const auto& r : respondents) {
    json row = {{"respondent", r.respondent}};
    if (!r.session.empty()) row["session"] = r.session;
    for (const auto& [k, v] : r.values) row[k] = v;
    if (!r.classification.empty()) row["classification"] = r.classification;
    rows.push_back(row);
  }
  j["respondents"] = rows;
  json likert_json = json::array();
  for (const auto& section : likert) {
    json s = {{"group", section.group},
              {"n", section.table.n_respondents},
              {"categories", section.table.categories}};
    json srows = json::array();
    for (std::size_t i = 0; i < section.rows.size(); ++i) {
      json pct = json::array();
      for (const auto& p : section.rows[i].percentages) pct.push_back(PercentageJson(p));
      srows.push_back({{"label", section.rows[i].label},
                       {"counts", section.table.rows[i].counts},
                       {"percentages", pct}});
    }
    s["rows"] = srows;
    json unions = json::array();
    for (const auto& u : section.unions) {
      json entry = PercentageJson(u.percentage);
      entry["row"] = u.row;
      entry["union"] = u.name;
      unions.push_back(entry);
    }
    s["unions"] = unions;
    likert_json.push_back(s);
  }
  j["likert"] = likert_json;
  json summary_json = json::object();
  for (const auto& [k, v] : summary) summary_json[k] = v;
  j["summary"] = summary_json;
  return j.dump(2) + "\n";
}

std::string InstrumentReport::ToText() const {
  std::ostringstream out;
  out << "instrument: " << InstrumentName(instrument) << "\n\n";
  out << "respondent  session";
  if (!respondents.empty()) {
    for (const auto& [k, v] : respondents.front().values) out << "  " << k;
  }
  out << "\n";
  for (const auto& r : respondents) {
    out << r.respondent << "  " << (r.session.empty() ? "-" : r.session);
    for (const auto& [k, v] : r.values) out << "  " << Fmt(v, 1);
    if (!r.classification.empty()) out << "  " << r.classification;
    out << "\n";
  }
  for (const auto& section : likert) {
    out << "\nLikert (" << section.group << ", n=" << section.table.n_respondents << ")\n";
    for (std::size_t i = 0; i < section.rows.size(); ++i) {
      out << section.rows[i].label << ":";
      for (std::size_t c = 0; c < section.rows[i].percentages.size(); ++c) {
        const auto& p = section.rows[i].percentages[c];
        out << "  " << p.count << "/" << Fmt(p.tenths, 1) << "%";
      }
      for (const auto& u : section.unions) {
        if (u.row == section.rows[i].label) {
          out << "  | " << u.name << " " << Fmt(u.percentage.tenths, 1) << "% ("
              << u.percentage.display << "%)";
        }
      }
      out << "\n";
    }
  }
  if (!summary.empty()) {
    out << "\nsummary\n";
    for (const auto& [k, v] : summary) out << k << ": " << Fmt(v, 2) << "\n";
  }
  return out.str();
}

}  // namespace midas::scales

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

#include "midas/signals.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "midas/error.h"
#include "midas/rng.h"
#include "text_util.h"

namespace midas {

void ValidateTrace(const EmgTrace& trace) {
  if (trace.sample_rate_hz <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample_rate_hz must be positive");
  }
  const double period_ms = 1000.0 / trace.sample_rate_hz;
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const EmgSample& s = trace.samples[i];
    if (s.t_ms < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "negative timestamp at sample " + std::to_string(i));
    }
    if (s.value < 0 || s.value > kAdcMax) {
      throw Error(ErrorCode::kInvalidArgument,
                  "value " + std::to_string(s.value) + " outside [0, 1023] at sample " +
                      std::to_string(i));
    }
    if (i == 0) continue;
    const std::int64_t dt = s.t_ms - trace.samples[i - 1].t_ms;
    if (dt <= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "timestamps not strictly increasing at sample " + std::to_string(i));
    }
    if (std::abs(static_cast<double>(dt) - period_ms) > 1.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sample spacing " + std::to_string(dt) + " ms inconsistent with " +
                      std::to_string(trace.sample_rate_hz) + " Hz at sample " +
                      std::to_string(i));
    }
  }
}

MovingAverage::MovingAverage(std::size_t window) : window_(window) {
  if (window_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "filter window must be >= 1");
  }
  ring_.assign(window_, 0);
}

double MovingAverage::Push(int x) {
  if (x < 0 || x > kAdcMax) {
    throw Error(ErrorCode::kOutOfRange, "raw sample outside [0, 1023]");
  }
  if (count_ == window_) {
    sum_ -= ring_[head_];
  } else {
    ++count_;
  }
  ring_[head_] = x;
  sum_ += x;
  head_ = (head_ + 1) % window_;
  return static_cast<double>(sum_) / static_cast<double>(count_);
}

void MovingAverage::Reset() {
  std::fill(ring_.begin(), ring_.end(), 0);
  head_ = 0;
  count_ = 0;
  sum_ = 0;
}

std::vector<FilteredSample> FilterTrace(const EmgTrace& trace, std::size_t window) {
  MovingAverage filter(window);
  std::vector<FilteredSample> out;
  out.reserve(trace.samples.size());
  for (const EmgSample& s : trace.samples) {
    out.push_back({s.t_ms, filter.Push(s.value)});
  }
  return out;
}

const char* IntentModeName(IntentMode mode) {
  return mode == IntentMode::kExtension ? "Extension" : "Flexion";
}

std::optional<IntentMode> ParseIntentMode(std::string_view name) {
  if (name == "Extension" || name == "extension") return IntentMode::kExtension;
  if (name == "Flexion" || name == "flexion") return IntentMode::kFlexion;
  return std::nullopt;
}

namespace {

void CheckMultipliers(double k_on, double k_off) {
  if (!(k_on > k_off && k_off > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "calibration requires k_on > k_off > 0");
  }
}

}  // namespace

CalibrationResult CalibrateBaseline(const EmgTrace& rest, double k_on, double k_off,
                                    std::size_t window) {
  CheckMultipliers(k_on, k_off);
  if (rest.samples.empty()) {
    throw Error(ErrorCode::kEmptyTrace, "rest trace is empty");
  }
  const auto filtered = FilterTrace(rest, window);
  double sum = 0.0;
  for (const auto& f : filtered) sum += f.value;
  const double n = static_cast<double>(filtered.size());
  const double mean = sum / n;
  double sq = 0.0;
  for (const auto& f : filtered) sq += (f.value - mean) * (f.value - mean);
  const double std_dev = std::sqrt(sq / n);

  CalibrationResult result;
  result.baseline_mean = mean;
  result.baseline_std = std_dev;
  result.theta_on = mean + k_on * std_dev;
  result.theta_off = mean + k_off * std_dev;
  if (!(result.theta_on > result.theta_off && result.theta_off > mean)) {
    throw Error(ErrorCode::kDegenerateCalibration,
                "rest trace has zero variance; onset and offset thresholds coincide");
  }
  return result;
}

CalibrationResult Calibrate(const EmgTrace& rest, const EmgTrace& active, double k_on,
                            double k_off, std::size_t window) {
  CheckMultipliers(k_on, k_off);
  if (rest.samples.empty() || active.samples.empty()) {
    throw Error(ErrorCode::kEmptyTrace, "calibration traces must be non-empty");
  }
  CalibrationResult result = CalibrateBaseline(rest, k_on, k_off, window);
  double peak = -1.0;
  for (const auto& f : FilterTrace(active, window)) peak = std::max(peak, f.value);
  if (peak < result.theta_on) {
    throw Error(ErrorCode::kUndetectableIntent,
                "active trace peak " + internal::FormatDecimal(peak) +
                    " never reaches onset threshold " +
                    internal::FormatDecimal(result.theta_on));
  }
  return result;
}

IntentDetector::IntentDetector(const DetectorConfig& config) : config_(config) {
  SetThresholds(config.theta_on, config.theta_off);
  if (config.min_hold_ms < 0) {
    throw Error(ErrorCode::kInvalidArgument, "min_hold_ms must be non-negative");
  }
}

void IntentDetector::SetThresholds(double theta_on, double theta_off) {
  if (!(theta_on > theta_off)) {
    throw Error(ErrorCode::kInvalidArgument, "detector requires theta_on > theta_off");
  }
  config_.theta_on = theta_on;
  config_.theta_off = theta_off;
  candidate_since_.reset();
}

std::optional<IntentEvent> IntentDetector::Push(std::int64_t t_ms, double filtered) {
  const bool crossing = active_ ? filtered <= config_.theta_off
                                : filtered >= config_.theta_on;
  if (!crossing) {
    candidate_since_.reset();
    return std::nullopt;
  }
  if (!candidate_since_) candidate_since_ = t_ms;
  if (t_ms - *candidate_since_ < config_.min_hold_ms) return std::nullopt;

  candidate_since_.reset();
  active_ = !active_;
  return IntentEvent{active_ ? IntentKind::kOnset : IntentKind::kOffset, t_ms,
                     config_.mode};
}

std::vector<IntentEvent> DetectIntent(const DetectorConfig& config,
                                      std::span<const FilteredSample> stream) {
  IntentDetector detector(config);
  std::vector<IntentEvent> events;
  for (const auto& s : stream) {
    if (auto ev = detector.Push(s.t_ms, s.value)) events.push_back(*ev);
  }
  return events;
}

EmgTrace SynthEmg(std::span<const Gesture> gestures, double noise_std, std::uint64_t seed,
                  const SynthOptions& options) {
  if (noise_std < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "noise_std must be non-negative");
  }
  if (options.sample_rate_hz <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample_rate_hz must be positive");
  }
  std::int64_t last_end = 0;
  for (std::size_t i = 0; i < gestures.size(); ++i) {
    const Gesture& g = gestures[i];
    if (g.start_ms < 0 || g.hold_ms <= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "gesture " + std::to_string(i) + " needs start >= 0 and hold > 0");
    }
    if (i > 0 && g.start_ms < last_end) {
      throw Error(ErrorCode::kOverlappingGestures,
                  "gesture " + std::to_string(i) + " starts before the previous one ends");
    }
    last_end = g.start_ms + g.hold_ms;
  }
  std::int64_t duration = options.duration_ms;
  if (duration <= 0) duration = std::max<std::int64_t>(last_end + 2000, 2000);

  EmgTrace trace;
  trace.sample_rate_hz = options.sample_rate_hz;
  Rng rng(seed);
  const std::int64_t n = duration * options.sample_rate_hz / 1000;
  trace.samples.reserve(static_cast<std::size_t>(n));
  std::size_t g = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t t = i * 1000 / options.sample_rate_hz;
    while (g < gestures.size() && t >= gestures[g].start_ms + gestures[g].hold_ms) ++g;
    const bool burst = g < gestures.size() && t >= gestures[g].start_ms;
    double v = burst ? options.burst_level : options.baseline;
    if (noise_std > 0.0) v += noise_std * rng.Normal();
    const int q = static_cast<int>(std::lround(std::clamp(v, 0.0, double{kAdcMax})));
    trace.samples.push_back({t, q});
  }
  return trace;
}

EmgTrace ReadTraceCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || internal::Trim(line) != "t_ms,value") {
    throw Error(ErrorCode::kParseError, "line 1: expected header 't_ms,value'");
  }
  EmgTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    const auto fields = internal::SplitCommas(line);
    const auto t = fields.size() == 2 ? internal::ParseInt(fields[0]) : std::nullopt;
    const auto v = fields.size() == 2 ? internal::ParseInt(fields[1]) : std::nullopt;
    if (!t || !v) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected '<t_ms>,<value>'");
    }
    trace.samples.push_back({*t, static_cast<int>(*v)});
  }
  if (trace.samples.size() >= 2) {
    const std::int64_t dt = trace.samples[1].t_ms - trace.samples[0].t_ms;
    if (dt > 0) trace.sample_rate_hz = static_cast<int>(std::lround(1000.0 / dt));
  }
  ValidateTrace(trace);
  return trace;
}

EmgTrace ReadTraceCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open trace file '" + path + "'");
  return ReadTraceCsv(in);
}

void WriteTraceCsv(std::ostream& out, const EmgTrace& trace) {
  out << "t_ms,value\n";
  for (const auto& s : trace.samples) out << s.t_ms << ',' << s.value << '\n';
}

}  // namespace midas

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

#ifndef MIDAS_SIGNALS_H_
#define MIDAS_SIGNALS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace midas {

inline constexpr int kAdcMax = 1023;
inline constexpr std::size_t kDefaultFilterWindow = 50;

struct EmgSample {
  std::int64_t t_ms = 0;
  int value = 0;  // raw ADC units, [0, kAdcMax]

  friend bool operator==(const EmgSample&, const EmgSample&) = default;
};

struct EmgTrace {
  std::vector<EmgSample> samples;
  int sample_rate_hz = 1000;

  friend bool operator==(const EmgTrace&, const EmgTrace&) = default;
};

// Throws kInvalidArgument if timestamps are not strictly increasing, a value
// leaves [0, 1023], the rate is not positive, or the spacing strays from the
// nominal period by more than one millisecond tick.
void ValidateTrace(const EmgTrace& trace);

// Streaming moving average over the last `window` raw samples. Until the
// window fills, the mean is taken over the samples seen so far. The running
// sum is kept as an integer, so the output equals a from-scratch window mean
// bit for bit.
class MovingAverage {
 public:
  explicit MovingAverage(std::size_t window = kDefaultFilterWindow);

  // Pushes one raw sample in [0, kAdcMax] and returns the current mean.
  double Push(int x);

  std::size_t window() const { return window_; }
  std::size_t size() const { return count_; }
  void Reset();

 private:
  std::size_t window_;
  std::vector<int> ring_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
  std::int64_t sum_ = 0;
};

struct FilteredSample {
  std::int64_t t_ms = 0;
  double value = 0.0;
};

std::vector<FilteredSample> FilterTrace(const EmgTrace& trace,
                                        std::size_t window = kDefaultFilterWindow);

enum class IntentMode { kExtension, kFlexion };

const char* IntentModeName(IntentMode mode);
std::optional<IntentMode> ParseIntentMode(std::string_view name);

struct CalibrationResult {
  double baseline_mean = 0.0;
  double baseline_std = 0.0;
  double theta_on = 0.0;
  double theta_off = 0.0;
};

struct CalibrationParams {
  double k_on = 3.0;
  double k_off = 1.5;
  std::int64_t min_hold_ms = 100;
  std::size_t window = kDefaultFilterWindow;
};

// Thresholds from the filtered rest trace alone: mean + k * population std.
// Throws kEmptyTrace, kInvalidArgument (k_on > k_off > 0 violated) or
// kDegenerateCalibration when the rest trace has zero variance.
CalibrationResult CalibrateBaseline(const EmgTrace& rest, double k_on,
                                    double k_off,
                                    std::size_t window = kDefaultFilterWindow);

// CalibrateBaseline plus a detectability check: throws kUndetectableIntent if
// the filtered active trace never reaches theta_on.
CalibrationResult Calibrate(const EmgTrace& rest, const EmgTrace& active,
                            double k_on, double k_off,
                            std::size_t window = kDefaultFilterWindow);

enum class IntentKind { kOnset, kOffset };

struct IntentEvent {
  IntentKind kind = IntentKind::kOnset;
  std::int64_t t_ms = 0;
  IntentMode mode = IntentMode::kExtension;

  friend bool operator==(const IntentEvent&, const IntentEvent&) = default;
};

struct DetectorConfig {
  double theta_on = 0.0;
  double theta_off = 0.0;
  IntentMode mode = IntentMode::kExtension;
  std::int64_t min_hold_ms = 100;
};

// Hysteresis onset/offset detector. An Onset fires once the filtered value
// has stayed >= theta_on for min_hold_ms; an Offset once it has stayed
// <= theta_off for min_hold_ms. The event carries the confirmation time.
class IntentDetector {
 public:
  explicit IntentDetector(const DetectorConfig& config);

  std::optional<IntentEvent> Push(std::int64_t t_ms, double filtered);

  // Mode and thresholds may change mid-stream; the active/inactive state is
  // kept so alternation survives reconfiguration.
  void SetMode(IntentMode mode) { config_.mode = mode; }
  void SetThresholds(double theta_on, double theta_off);

  bool active() const { return active_; }
  const DetectorConfig& config() const { return config_; }

 private:
  DetectorConfig config_;
  bool active_ = false;
  std::optional<std::int64_t> candidate_since_;
};

std::vector<IntentEvent> DetectIntent(const DetectorConfig& config,
                                      std::span<const FilteredSample> stream);

struct Gesture {
  std::int64_t start_ms = 0;
  std::int64_t hold_ms = 0;
};

struct SynthOptions {
  int sample_rate_hz = 1000;
  // 0 means last gesture end + 2000 ms (at least 2000 ms).
  std::int64_t duration_ms = 0;
  double baseline = 100.0;
  double burst_level = 450.0;
};

// Deterministic synthetic trace: baseline plus Gaussian noise, with gesture
// windows raised to burst_level. Values are rounded and clamped to the ADC
// range. Throws kOverlappingGestures for unordered/overlapping bursts.
EmgTrace SynthEmg(std::span<const Gesture> gestures, double noise_std,
                  std::uint64_t seed, const SynthOptions& options = {});

// CSV with header `t_ms,value`, LF line endings. The sample rate is inferred
// from the first interval (1000 Hz for single-sample traces).
EmgTrace ReadTraceCsv(std::istream& in);
EmgTrace ReadTraceCsvFile(const std::string& path);
void WriteTraceCsv(std::ostream& out, const EmgTrace& trace);

}  // namespace midas

#endif  // MIDAS_SIGNALS_H_

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

#include "midas/messages.h"

#include <cmath>

namespace midas::msg {

namespace {

class Writer {
 public:
  Writer& U8(std::uint8_t v) {
    bytes_.push_back(v);
    return *this;
  }
  Writer& U16(std::uint16_t v) {
    bytes_.push_back(static_cast<std::uint8_t>(v & 0xFF));
    bytes_.push_back(static_cast<std::uint8_t>(v >> 8));
    return *this;
  }
  Writer& U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }
  Writer& Milli(double v) {
    return U32(static_cast<std::uint32_t>(static_cast<std::int32_t>(std::lround(v * 1000.0))));
  }
  Writer& Centi(double v) {
    return U16(static_cast<std::uint16_t>(std::lround(v * 100.0)));
  }
  std::vector<std::uint8_t> Take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> p) : p_(p) {}
  std::uint8_t U8() { return p_[at_++]; }
  std::uint16_t U16() {
    const auto v = static_cast<std::uint16_t>(p_[at_] | (p_[at_ + 1] << 8));
    at_ += 2;
    return v;
  }
  std::uint32_t U32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p_[at_ + i]) << (8 * i);
    at_ += 4;
    return v;
  }
  double Milli() { return static_cast<std::int32_t>(U32()) / 1000.0; }
  double Centi() { return U16() / 100.0; }

 private:
  std::span<const std::uint8_t> p_;
  std::size_t at_ = 0;
};

std::optional<IntentMode> ModeFrom(std::uint8_t v) {
  if (v == 0) return IntentMode::kExtension;
  if (v == 1) return IntentMode::kFlexion;
  return std::nullopt;
}

std::uint8_t ModeTo(IntentMode m) { return m == IntentMode::kExtension ? 0 : 1; }

}  // namespace

std::vector<std::uint8_t> Pack(const EmgFiltered& m) {
  return Writer().U32(m.t_ms).Milli(m.value).Take();
}

std::vector<std::uint8_t> Pack(const Intent& m) {
  return Writer()
      .U8(m.event.kind == IntentKind::kOnset ? 0 : 1)
      .U8(ModeTo(m.event.mode))
      .U32(static_cast<std::uint32_t>(m.event.t_ms))
      .Take();
}

std::vector<std::uint8_t> Pack(const ServoCmd& m) {
  return Writer().Centi(m.target_deg).Take();
}

std::vector<std::uint8_t> Pack(const ServoStatus& m) {
  return Writer().Centi(m.theta_deg).Centi(m.target_deg).Take();
}

std::vector<std::uint8_t> Pack(const Game& m) {
  return Writer().U8(m.kind).U8(m.stage).U32(m.t_ms).Milli(m.value).Take();
}

std::vector<std::uint8_t> Pack(const Scent& m) {
  return Writer().U8(static_cast<std::uint8_t>(m.op)).Take();
}

std::vector<std::uint8_t> Pack(const ModeSet& m) { return Writer().U8(ModeTo(m.mode)).Take(); }

std::vector<std::uint8_t> Pack(const StageCtl& m) {
  return Writer().U8(static_cast<std::uint8_t>(m.op)).Milli(m.arg1).Milli(m.arg2).Take();
}

std::optional<EmgFiltered> UnpackEmgFiltered(std::span<const std::uint8_t> p) {
  if (p.size() != 8) return std::nullopt;
  Reader r(p);
  EmgFiltered m;
  m.t_ms = r.U32();
  m.value = r.Milli();
  return m;
}

std::optional<Intent> UnpackIntent(std::span<const std::uint8_t> p) {
  if (p.size() != 6 || p[0] > 1) return std::nullopt;
  Reader r(p);
  Intent m;
  m.event.kind = r.U8() == 0 ? IntentKind::kOnset : IntentKind::kOffset;
  const auto mode = ModeFrom(r.U8());
  if (!mode) return std::nullopt;
  m.event.mode = *mode;
  m.event.t_ms = r.U32();
  return m;
}

std::optional<ServoCmd> UnpackServoCmd(std::span<const std::uint8_t> p) {
  if (p.size() != 2) return std::nullopt;
  Reader r(p);
  return ServoCmd{r.Centi()};
}

std::optional<ServoStatus> UnpackServoStatus(std::span<const std::uint8_t> p) {
  if (p.size() != 4) return std::nullopt;
  Reader r(p);
  ServoStatus m;
  m.theta_deg = r.Centi();
  m.target_deg = r.Centi();
  return m;
}

std::optional<Game> UnpackGame(std::span<const std::uint8_t> p) {
  if (p.size() != 10) return std::nullopt;
  Reader r(p);
  Game m;
  m.kind = r.U8();
  m.stage = r.U8();
  m.t_ms = r.U32();
  m.value = r.Milli();
  return m;
}

std::optional<Scent> UnpackScent(std::span<const std::uint8_t> p) {
  if (p.size() != 1 || p[0] < 1 || p[0] > 3) return std::nullopt;
  return Scent{static_cast<ScentOp>(p[0])};
}

std::optional<ModeSet> UnpackModeSet(std::span<const std::uint8_t> p) {
  if (p.size() != 1) return std::nullopt;
  const auto mode = ModeFrom(p[0]);
  if (!mode) return std::nullopt;
  return ModeSet{*mode};
}

std::optional<StageCtl> UnpackStageCtl(std::span<const std::uint8_t> p) {
  if (p.size() != 9 || p[0] < 1 || p[0] > 3) return std::nullopt;
  Reader r(p);
  StageCtl m;
  m.op = static_cast<StageOp>(r.U8());
  m.arg1 = r.Milli();
  m.arg2 = r.Milli();
  return m;
}

}  // namespace midas::msg

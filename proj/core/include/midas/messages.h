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

#ifndef MIDAS_MESSAGES_H_
#define MIDAS_MESSAGES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "midas/netlink.h"
#include "midas/signals.h"

namespace midas::msg {

// Payload layouts (all integers little-endian):
//   EmgFiltered  u32 t_ms, i32 value * 1000
//   IntentEvent  u8 kind (0 onset, 1 offset), u8 mode (0 ext, 1 flex), u32 t_ms
//   ServoCmd     u16 target centidegrees
//   ServoState   u16 theta centidegrees, u16 target centidegrees
//   GameEvent    u8 kind, u8 stage, u32 t_ms, i32 value * 1000
//   ScentCmd     u8 op
//   ModeSet      u8 mode
//   StageCtl     u8 op, i32 arg1 * 1000, i32 arg2 * 1000
//   Heartbeat    empty

struct EmgFiltered {
  std::uint32_t t_ms = 0;
  double value = 0.0;
};

struct Intent {
  IntentEvent event;
};

struct ServoCmd {
  double target_deg = 0.0;
};

struct ServoStatus {
  double theta_deg = 0.0;
  double target_deg = 0.0;
};

struct Game {
  std::uint8_t kind = 0;
  std::uint8_t stage = 0;
  std::uint32_t t_ms = 0;
  double value = 0.0;
};

enum class ScentOp : std::uint8_t { kRelease = 1, kEnable = 2, kDisable = 3 };

struct Scent {
  ScentOp op = ScentOp::kRelease;
};

struct ModeSet {
  IntentMode mode = IntentMode::kExtension;
};

enum class StageOp : std::uint8_t { kStart = 1, kStop = 2, kRecalibrate = 3 };

struct StageCtl {
  StageOp op = StageOp::kStart;
  double arg1 = 0.0;
  double arg2 = 0.0;
};

std::vector<std::uint8_t> Pack(const EmgFiltered& m);
std::vector<std::uint8_t> Pack(const Intent& m);
std::vector<std::uint8_t> Pack(const ServoCmd& m);
std::vector<std::uint8_t> Pack(const ServoStatus& m);
std::vector<std::uint8_t> Pack(const Game& m);
std::vector<std::uint8_t> Pack(const Scent& m);
std::vector<std::uint8_t> Pack(const ModeSet& m);
std::vector<std::uint8_t> Pack(const StageCtl& m);

// Each returns nullopt when the payload has the wrong size or an invalid
// enumerator.
std::optional<EmgFiltered> UnpackEmgFiltered(std::span<const std::uint8_t> p);
std::optional<Intent> UnpackIntent(std::span<const std::uint8_t> p);
std::optional<ServoCmd> UnpackServoCmd(std::span<const std::uint8_t> p);
std::optional<ServoStatus> UnpackServoStatus(std::span<const std::uint8_t> p);
std::optional<Game> UnpackGame(std::span<const std::uint8_t> p);
std::optional<Scent> UnpackScent(std::span<const std::uint8_t> p);
std::optional<ModeSet> UnpackModeSet(std::span<const std::uint8_t> p);
std::optional<StageCtl> UnpackStageCtl(std::span<const std::uint8_t> p);

}  // namespace midas::msg

#endif  // MIDAS_MESSAGES_H_

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

#ifndef MIDAS_NETLINK_H_
#define MIDAS_NETLINK_H_

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <vector>

#include "midas/rng.h"

namespace midas {

// Node ids on the hub.
namespace node {
inline constexpr std::uint8_t kHub = 0;
inline constexpr std::uint8_t kEmg = 1;
inline constexpr std::uint8_t kExoskeleton = 2;
inline constexpr std::uint8_t kGame = 3;
inline constexpr std::uint8_t kOlfactory = 4;
inline constexpr std::uint8_t kConsole = 5;
inline constexpr std::uint8_t kBroadcast = 0xFF;
}  // namespace node

enum class MsgType : std::uint8_t {
  kEmgFiltered = 1,
  kIntentEvent = 2,
  kServoCmd = 3,
  kServoState = 4,
  kGameEvent = 5,
  kScentCmd = 6,
  kHeartbeat = 7,
  kModeSet = 8,
  kStageCtl = 9,
};

bool IsKnownMsgType(std::uint8_t code);

inline constexpr std::uint8_t kStartOfFrame = 0xA5;
inline constexpr std::size_t kMaxPayload = 256;
// sof(1) type(1) seq(2) src(1) dst(1) len(2) ... crc(2)
inline constexpr std::size_t kFrameOverhead = 10;

struct Frame {
  MsgType type = MsgType::kHeartbeat;
  std::uint16_t seq = 0;
  std::uint8_t src = 0;
  std::uint8_t dst = 0;
  std::vector<std::uint8_t> payload;

  std::size_t EncodedSize() const { return kFrameOverhead + payload.size(); }

  friend bool operator==(const Frame&, const Frame&) = default;
};

// CRC-CCITT: polynomial 0x1021, init 0xFFFF, no reflection, no final xor.
std::uint16_t Crc16(std::span<const std::uint8_t> bytes);

// Little-endian seq/len/crc; the CRC covers msg_type through the payload.
// Throws kPayloadTooLong above 256 payload bytes.
std::vector<std::uint8_t> EncodeFrame(const Frame& frame);

enum class DecodeError {
  kOk,
  kBadSof,
  kTruncated,   // buffer shorter than the header or the declared frame
  kBadLength,   // declared len > 256, or bytes beyond the declared frame
  kBadCrc,
  kUnknownType,
};

const char* DecodeErrorName(DecodeError error);

struct DecodeResult {
  DecodeError error = DecodeError::kOk;
  Frame frame;

  bool ok() const { return error == DecodeError::kOk; }
};

// Decodes exactly one frame occupying the whole buffer.
DecodeResult DecodeFrame(std::span<const std::uint8_t> bytes);

struct LinkConfig {
  std::int64_t baud = 115200;
  std::int64_t latency_ms = 5;
  std::int64_t jitter_ms = 0;
  double loss_prob = 0.0;
  std::uint64_t seed = 1;
};

struct Delivery {
  Frame frame;
  std::uint8_t to = 0;
  std::int64_t ready_ms = 0;      // latency + jitter elapsed
  std::int64_t delivered_ms = 0;  // last byte off the serial line
};

struct HubStats {
  std::uint64_t frames_sent = 0;     // accepted by Send, one per fan-out copy
  std::uint64_t frames_dropped = 0;
  std::uint64_t frames_delivered = 0;
  std::uint64_t bytes_delivered = 0;
};

// Central hub on a simulated millisecond clock. Frames are delayed by
// latency + U{0..jitter}, dropped with probability loss_prob, and then
// serialized over one shared 8-N-1 line at baud/10 bytes per second.
// Delivery order within a (src, dst) pair always equals send order.
class Hub {
 public:
  explicit Hub(const LinkConfig& config);

  void Register(std::uint8_t node_id);
  bool IsRegistered(std::uint8_t node_id) const;

  // Outcome of scheduling one copy of a frame.
  struct SendOutcome {
    std::uint8_t to = 0;
    bool dropped = false;
    std::int64_t ready_ms = 0;
  };

  // Throws kUnknownSource / kUnknownDestination, kClockRegression if now_ms
  // precedes the last observed time, kPayloadTooLong for oversize frames.
  std::vector<SendOutcome> Send(const Frame& frame, std::int64_t now_ms);

  // Releases every frame whose serialization finishes by now_ms.
  std::vector<Delivery> TransportStep(std::int64_t now_ms);

  std::size_t in_flight() const { return queue_.size(); }
  const HubStats& stats() const { return stats_; }
  const LinkConfig& config() const { return config_; }

 private:
  struct Pending {
    std::int64_t ready_ms;
    std::uint64_t order;
    Frame frame;
    std::uint8_t to;
  };
  struct Later {
    bool operator()(const Pending& a, const Pending& b) const {
      if (a.ready_ms != b.ready_ms) return a.ready_ms > b.ready_ms;
      return a.order > b.order;
    }
  };

  void CheckClock(std::int64_t now_ms);

  LinkConfig config_;
  Rng rng_;
  std::set<std::uint8_t> nodes_;
  std::priority_queue<Pending, std::vector<Pending>, Later> queue_;
  std::map<std::pair<std::uint8_t, std::uint8_t>, std::int64_t> pair_ready_;
  std::uint64_t next_order_ = 0;
  std::int64_t last_now_ms_ = 0;
  // Line time in units of 1 / (1000 * baud) seconds, so that one byte costs
  // exactly 10 * 1000 units and one millisecond exactly `baud` units.
  std::int64_t line_free_units_ = 0;
  HubStats stats_;
};

// Per-sender monotonically increasing sequence numbers, wrapping mod 2^16.
class SeqCounter {
 public:
  std::uint16_t Next(std::uint8_t src) { return next_[src]++; }

 private:
  std::map<std::uint8_t, std::uint16_t> next_;
};

}  // namespace midas

#endif  // MIDAS_NETLINK_H_

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

#include "midas/netlink.h"

#include <algorithm>
#include <string>

#include "midas/error.h"

namespace midas {

bool IsKnownMsgType(std::uint8_t code) { return code >= 1 && code <= 9; }

std::uint16_t Crc16(std::span<const std::uint8_t> bytes) {
  std::uint16_t crc = 0xFFFF;
  for (std::uint8_t b : bytes) {
    crc ^= static_cast<std::uint16_t>(b) << 8;
    for (int i = 0; i < 8; ++i) {
      crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                           : static_cast<std::uint16_t>(crc << 1);
    }
  }
  return crc;
}

std::vector<std::uint8_t> EncodeFrame(const Frame& frame) {
  if (frame.payload.size() > kMaxPayload) {
    throw Error(ErrorCode::kPayloadTooLong,
                "payload of " + std::to_string(frame.payload.size()) +
                    " bytes exceeds 256");
  }
  const auto len = static_cast<std::uint16_t>(frame.payload.size());
  std::vector<std::uint8_t> out;
  out.reserve(frame.EncodedSize());
  out.push_back(kStartOfFrame);
  out.push_back(static_cast<std::uint8_t>(frame.type));
  out.push_back(static_cast<std::uint8_t>(frame.seq & 0xFF));
  out.push_back(static_cast<std::uint8_t>(frame.seq >> 8));
  out.push_back(frame.src);
  out.push_back(frame.dst);
  out.push_back(static_cast<std::uint8_t>(len & 0xFF));
  out.push_back(static_cast<std::uint8_t>(len >> 8));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  const std::uint16_t crc = Crc16(std::span(out).subspan(1));
  out.push_back(static_cast<std::uint8_t>(crc & 0xFF));
  out.push_back(static_cast<std::uint8_t>(crc >> 8));
  return out;
}

const char* DecodeErrorName(DecodeError error) {
  switch (error) {
    case DecodeError::kOk: return "Ok";
    case DecodeError::kBadSof: return "BadSof";
    case DecodeError::kTruncated: return "Truncated";
    case DecodeError::kBadLength: return "BadLength";
    case DecodeError::kBadCrc: return "BadCrc";
    case DecodeError::kUnknownType: return "UnknownType";
  }
  return "Unknown";
}

DecodeResult DecodeFrame(std::span<const std::uint8_t> bytes) {
  DecodeResult result;
  if (bytes.empty()) {
    result.error = DecodeError::kTruncated;
    return result;
  }
  if (bytes[0] != kStartOfFrame) {
    result.error = DecodeError::kBadSof;
    return result;
  }
  if (bytes.size() < kFrameOverhead) {
    result.error = DecodeError::kTruncated;
    return result;
  }
  const std::size_t len = bytes[6] | (static_cast<std::size_t>(bytes[7]) << 8);
  if (len > kMaxPayload) {
    result.error = DecodeError::kBadLength;
    return result;
  }
  if (bytes.size() < kFrameOverhead + len) {
    result.error = DecodeError::kTruncated;
    return result;
  }
  if (bytes.size() > kFrameOverhead + len) {
    result.error = DecodeError::kBadLength;
    return result;
  }
  const std::size_t crc_at = 8 + len;
  const std::uint16_t stored = bytes[crc_at] | (bytes[crc_at + 1] << 8);
  if (Crc16(bytes.subspan(1, crc_at - 1)) != stored) {
    result.error = DecodeError::kBadCrc;
    return result;
  }
  if (!IsKnownMsgType(bytes[1])) {
    result.error = DecodeError::kUnknownType;
    return result;
  }
  result.frame.type = static_cast<MsgType>(bytes[1]);
  result.frame.seq = static_cast<std::uint16_t>(bytes[2] | (bytes[3] << 8));
  result.frame.src = bytes[4];
  result.frame.dst = bytes[5];
  result.frame.payload.assign(bytes.begin() + 8, bytes.begin() + 8 + len);
  return result;
}

Hub::Hub(const LinkConfig& config) : config_(config), rng_(config.seed) {
  if (config_.baud <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "baud must be positive");
  }
  if (!(config_.loss_prob >= 0.0 && config_.loss_prob <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "loss_prob must lie in [0, 1]");
  }
  if (config_.latency_ms < 0 || config_.jitter_ms < 0) {
    throw Error(ErrorCode::kInvalidArgument, "latency and jitter must be non-negative");
  }
}

void Hub::Register(std::uint8_t node_id) {
  if (node_id == node::kBroadcast) {
    throw Error(ErrorCode::kInvalidArgument, "0xFF is reserved for broadcast");
  }
  nodes_.insert(node_id);
}

bool Hub::IsRegistered(std::uint8_t node_id) const { return nodes_.contains(node_id); }

void Hub::CheckClock(std::int64_t now_ms) {
  if (now_ms < last_now_ms_) {
    throw Error(ErrorCode::kClockRegression,
                "clock moved from " + std::to_string(last_now_ms_) + " to " +
                    std::to_string(now_ms));
  }
  last_now_ms_ = now_ms;
}

std::vector<Hub::SendOutcome> Hub::Send(const Frame& frame, std::int64_t now_ms) {
  if (frame.payload.size() > kMaxPayload) {
    throw Error(ErrorCode::kPayloadTooLong, "payload exceeds 256 bytes");
  }
  if (!IsRegistered(frame.src)) {
    throw Error(ErrorCode::kUnknownSource,
                "source node " + std::to_string(frame.src) + " is not registered");
  }
  std::vector<std::uint8_t> targets;
  if (frame.dst == node::kBroadcast) {
    for (std::uint8_t n : nodes_) {
      if (n != frame.src) targets.push_back(n);
    }
  } else {
    if (!IsRegistered(frame.dst)) {
      throw Error(ErrorCode::kUnknownDestination,
                  "destination node " + std::to_string(frame.dst) + " is not registered");
    }
    targets.push_back(frame.dst);
  }
  CheckClock(now_ms);

  std::vector<SendOutcome> outcomes;
  for (std::uint8_t to : targets) {
    ++stats_.frames_sent;
    SendOutcome outcome;
    outcome.to = to;
    // Both draws happen for every copy so the random stream does not depend
    // on which frames happen to be lost.
    const double loss_draw = rng_.Uniform01();
    const std::int64_t jitter = rng_.UniformInt(config_.jitter_ms);
    if (loss_draw < config_.loss_prob) {
      ++stats_.frames_dropped;
      outcome.dropped = true;
      outcomes.push_back(outcome);
      continue;
    }
    std::int64_t ready = now_ms + config_.latency_ms + jitter;
    auto& pair_ready = pair_ready_[{frame.src, to}];
    ready = std::max(ready, pair_ready);
    pair_ready = ready;
    outcome.ready_ms = ready;
    queue_.push(Pending{ready, next_order_++, frame, to});
    outcomes.push_back(outcome);
  }
  return outcomes;
}

std::vector<Delivery> Hub::TransportStep(std::int64_t now_ms) {
  CheckClock(now_ms);
  std::vector<Delivery> out;
  const std::int64_t now_units = now_ms * config_.baud;
  while (!queue_.empty()) {
    const Pending& head = queue_.top();
    if (head.ready_ms > now_ms) break;
    const std::int64_t start =
        std::max(line_free_units_, head.ready_ms * config_.baud);
    const std::int64_t finish =
        start + static_cast<std::int64_t>(head.frame.EncodedSize()) * 10 * 1000;
    if (finish > now_units) break;
    line_free_units_ = finish;
    Delivery d;
    d.frame = head.frame;
    d.to = head.to;
    d.ready_ms = head.ready_ms;
    // Ceiling so a delivery is never reported before its last byte lands.
    d.delivered_ms = (finish + config_.baud - 1) / config_.baud;
    ++stats_.frames_delivered;
    stats_.bytes_delivered += head.frame.EncodedSize();
    out.push_back(std::move(d));
    queue_.pop();
  }
  return out;
}

}  // namespace midas

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

#include "midas/service.h"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <fstream>
#include <future>
#include <initializer_list>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "midas/error.h"

namespace midas::service {

namespace {

using nlohmann::json;

void CheckKeys(const json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& section) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kConfigError, section + ": expected an object");
  }
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw Error(ErrorCode::kConfigError, section + ": unknown key '" + item.key() + "'");
    }
  }
}

template <typename T>
void Read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

std::string JoinPath(const std::string& base, const std::string& path) {
  if (base.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base) / path).string();
}

void ParseGame(const json& j, GameConfig& g) {
  CheckKeys(j,
            {"n_stages", "stage_duration_ms", "squeeze_targets", "hold_target_ms",
             "score_per_squeeze_max", "extension_weight", "tiers_per_stage", "intermission_ms"},
            "game");
  Read(j, "n_stages", g.n_stages);
  Read(j, "stage_duration_ms", g.stage_duration_ms);
  Read(j, "squeeze_targets", g.squeeze_targets);
  Read(j, "hold_target_ms", g.hold_target_ms);
  Read(j, "score_per_squeeze_max", g.score_per_squeeze_max);
  Read(j, "extension_weight", g.extension_weight);
  Read(j, "tiers_per_stage", g.tiers_per_stage);
  Read(j, "intermission_ms", g.intermission_ms);
}

void ParseLink(const json& j, LinkConfig& l) {
  CheckKeys(j, {"baud", "latency_ms", "jitter_ms", "loss_prob"}, "link");
  Read(j, "baud", l.baud);
  Read(j, "latency_ms", l.latency_ms);
  Read(j, "jitter_ms", l.jitter_ms);
  Read(j, "loss_prob", l.loss_prob);
}

void ParseSynth(const json& j, SynthSchedule& s) {
  CheckKeys(j, {"gestures", "noise_std", "seed", "baseline", "burst_level", "duration_ms"},
            "synth");
  if (j.contains("gestures")) {
    for (const json& g : j.at("gestures")) {
      CheckKeys(g, {"start_ms", "hold_ms"}, "synth.gestures");
      s.gestures.push_back({g.at("start_ms").get<std::int64_t>(),
                            g.at("hold_ms").get<std::int64_t>()});
    }
  }
  Read(j, "noise_std", s.noise_std);
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  Read(j, "baseline", s.options.baseline);
  Read(j, "burst_level", s.options.burst_level);
  Read(j, "duration_ms", s.options.duration_ms);
}

RunConfig ParseRunConfigJson(const json& j, const std::string& base_dir) {
  CheckKeys(j,
            {"seed", "trace", "synth", "game", "link", "calibration", "thresholds", "olfactory",
             "mode", "offset_policy", "telemetry_hz", "heartbeat_ms", "output", "pacing"},
            "config");
  RunConfig cfg;
  SessionConfig& s = cfg.session;
  Read(j, "seed", cfg.seed);
  if (j.contains("trace") && j.contains("synth")) {
    throw Error(ErrorCode::kConfigError, "config: give either 'trace' or 'synth', not both");
  }
  if (j.contains("trace")) cfg.trace_path = JoinPath(base_dir, j.at("trace").get<std::string>());
  if (j.contains("synth")) ParseSynth(j.at("synth"), cfg.synth);
  if (j.contains("game")) ParseGame(j.at("game"), s.game);
  if (j.contains("link")) ParseLink(j.at("link"), s.link);
  if (j.contains("calibration")) {
    const json& c = j.at("calibration");
    CheckKeys(c, {"k_on", "k_off", "min_hold_ms", "window", "rest_ms"}, "calibration");
    Read(c, "k_on", s.calibration.k_on);
    Read(c, "k_off", s.calibration.k_off);
    Read(c, "min_hold_ms", s.calibration.min_hold_ms);
    Read(c, "window", s.calibration.window);
    Read(c, "rest_ms", s.rest_ms);
  }
  if (j.contains("thresholds")) {
    const json& t = j.at("thresholds");
    CheckKeys(t, {"theta_on", "theta_off"}, "thresholds");
    s.thresholds = std::make_pair(t.at("theta_on").get<double>(), t.at("theta_off").get<double>());
  }
  if (j.contains("olfactory")) {
    const json& o = j.at("olfactory");
    CheckKeys(o, {"enabled", "cooldown_ms", "emit_ms"}, "olfactory");
    Read(o, "enabled", s.olfactory.enabled);
    Read(o, "cooldown_ms", s.olfactory.cooldown_ms);
    Read(o, "emit_ms", s.olfactory.emit_ms);
  }
  if (j.contains("mode")) {
    const auto name = j.at("mode").get<std::string>();
    auto mode = ParseIntentMode(name);
    if (!mode) throw Error(ErrorCode::kConfigError, "mode: unknown value '" + name + "'");
    s.mode = *mode;
  }
  if (j.contains("offset_policy")) {
    const auto name = j.at("offset_policy").get<std::string>();
    if (name == "ReturnToRest") {
      s.offset_policy = OffsetPolicy::kReturnToRest;
    } else if (name == "Hold") {
      s.offset_policy = OffsetPolicy::kHold;
    } else {
      throw Error(ErrorCode::kConfigError, "offset_policy: unknown value '" + name + "'");
    }
  }
  Read(j, "telemetry_hz", s.telemetry_hz);
  Read(j, "heartbeat_ms", s.heartbeat_ms);
  if (j.contains("output")) {
    const json& o = j.at("output");
    CheckKeys(o, {"report", "log"}, "output");
    if (o.contains("report")) cfg.report_path = o.at("report").get<std::string>();
    if (o.contains("log")) cfg.log_path = o.at("log").get<std::string>();
  }
  Read(j, "pacing", cfg.pacing);
  if (cfg.pacing < 0) throw Error(ErrorCode::kConfigError, "pacing must be >= 0");
  s.link.seed = cfg.seed;
  try {
    ValidateGameConfig(s.game);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, std::string("game: ") + e.what());
  }
  return cfg;
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

json ResultJson(const ControlResult& r) {
  return {{"accepted", r.accepted}, {"message", r.message}};
}

}  // namespace

RunConfig ParseRunConfig(std::string_view json_text, const std::string& base_dir) {
  try {
    return ParseRunConfigJson(json::parse(json_text), base_dir);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("config: ") + e.what());
  }
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ParseRunConfig(ss.str(), std::filesystem::path(path).parent_path().string());
}

EmgTrace LoadTrace(const RunConfig& cfg) {
  if (cfg.trace_path) return ReadTraceCsvFile(*cfg.trace_path);
  return SynthEmg(cfg.synth.gestures, cfg.synth.noise_std, cfg.synth.seed.value_or(cfg.seed),
                  cfg.synth.options);
}

int RunHeadless(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  EmgTrace trace;
  try {
    trace = LoadTrace(cfg);
  } catch (const Error& e) {
    err << "error: trace: " << e.what() << "\n";
    return e.code() == ErrorCode::kOverlappingGestures || e.code() == ErrorCode::kInvalidArgument
               ? kExitConfig
               : kExitIo;
  }
  SessionResult result;
  try {
    SessionConfig session = cfg.session;
    session.link.seed = cfg.seed;
    result = RunSession(trace, session);
  } catch (const Error& e) {
    err << "error: session: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return kExitSimulation;
  }
  try {
    const std::string report = ReportToJson(result.report);
    if (cfg.report_path.empty()) {
      out << report;
    } else {
      WriteFile(cfg.report_path, report);
    }
    if (!cfg.log_path.empty()) WriteFile(cfg.log_path, result.log.ToCsv());
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

ControlAction ParseControlAction(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("action")) {
      throw Error(ErrorCode::kParseError, "expected an object with an 'action' field");
    }
    const auto name = j.at("action").get<std::string>();
    if (name == "StartStage") {
      CheckKeys(j, {"action"}, name);
      return ControlAction::StartStage();
    }
    if (name == "StopStage") {
      CheckKeys(j, {"action"}, name);
      return ControlAction::StopStage();
    }
    if (name == "ScentTrigger") {
      CheckKeys(j, {"action"}, name);
      return ControlAction::ScentTrigger();
    }
    if (name == "SetMode") {
      CheckKeys(j, {"action", "mode"}, name);
      const auto mode = ParseIntentMode(j.at("mode").get<std::string>());
      if (!mode) throw Error(ErrorCode::kParseError, "SetMode: mode must be Extension or Flexion");
      return ControlAction::SetMode(*mode);
    }
    if (name == "Recalibrate") {
      CheckKeys(j, {"action", "k_on", "k_off"}, name);
      return ControlAction::Recalibrate(j.at("k_on").get<double>(), j.at("k_off").get<double>());
    }
    if (name == "SetEnabled") {
      CheckKeys(j, {"action", "enabled"}, name);
      return ControlAction::SetOlfactoryEnabled(j.at("enabled").get<bool>());
    }
    throw Error(ErrorCode::kParseError, "unknown action '" + name + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError, e.what());
  }
}

struct Server::Impl {
  static constexpr std::size_t kRingCapacity = 4096;

  struct PendingControl {
    ControlAction action;
    std::promise<ControlResult> result;
  };

  explicit Impl(const RunConfig& cfg) : config(cfg), sim(LoadTrace(cfg), Served(cfg)) {}

  static SessionConfig Served(const RunConfig& cfg) {
    SessionConfig s = cfg.session;
    s.auto_start = false;
    s.link.seed = cfg.seed;
    return s;
  }

  void Publish(std::string line) {
    {
      std::lock_guard<std::mutex> lock(ring_mu);
      ring.push_back(std::move(line));
      ++next_seq;
      if (ring.size() > kRingCapacity) ring.pop_front();
    }
    ring_cv.notify_all();
  }

  void Loop() {
    using Clock = std::chrono::steady_clock;
    const auto wall_start = Clock::now();
    const int period = 1000 / config.session.telemetry_hz;
    auto next_idle_publish = wall_start;
    while (true) {
      std::deque<PendingControl> controls;
      {
        std::unique_lock<std::mutex> lock(queue_mu);
        queue_cv.wait_for(lock, std::chrono::milliseconds(1),
                          [&] { return stopping || !queue.empty(); });
        if (stopping) break;
        controls.swap(queue);
      }
      std::vector<std::string> lines;
      {
        std::lock_guard<std::mutex> lock(sim_mu);
        for (PendingControl& c : controls) c.result.set_value(sim.Apply(c.action));
        const double elapsed_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - wall_start).count();
        const auto target = static_cast<std::int64_t>(elapsed_ms * config.pacing);
        int budget = 1000;
        while (!sim.done() && budget-- > 0 && (config.pacing == 0 || sim.now_ms() < target)) {
          const std::int64_t t = sim.now_ms();
          sim.Step();
          if (t % period == 0) lines.push_back(TelemetryToJson(sim.Snapshot()));
        }
        if (sim.done() && Clock::now() >= next_idle_publish) {
          lines.push_back(TelemetryToJson(sim.Snapshot()));
          next_idle_publish = Clock::now() + std::chrono::milliseconds(period);
        }
      }
      for (auto& line : lines) Publish(std::move(line));
    }
    std::lock_guard<std::mutex> lock(queue_mu);
    for (PendingControl& c : queue) c.result.set_value({false, "server stopping"});
    queue.clear();
  }

  ControlResult Submit(const ControlAction& action) {
    std::future<ControlResult> f;
    {
      std::lock_guard<std::mutex> lock(queue_mu);
      if (!loop.joinable() || stopping) {
        std::lock_guard<std::mutex> sim_lock(sim_mu);
        return sim.Apply(action);
      }
      queue.push_back({action, {}});
      f = queue.back().result.get_future();
    }
    queue_cv.notify_one();
    return f.get();
  }

  void InstallRoutes() {
    http.Get("/state", [this](const httplib::Request&, httplib::Response& res) {
      SessionSnapshot s;
      {
        std::lock_guard<std::mutex> lock(sim_mu);
        s = sim.Snapshot();
      }
      res.set_content(SnapshotToJson(s), "application/json");
    });
    http.Post("/control", [this](const httplib::Request& req, httplib::Response& res) {
      ControlAction action;
      try {
        action = ParseControlAction(req.body);
      } catch (const Error& e) {
        res.status = 400;
        res.set_content(json{{"accepted", false}, {"error", e.what()}}.dump(),
                        "application/json");
        return;
      }
      const ControlResult r = Submit(action);
      res.status = r.accepted ? 200 : 409;
      res.set_content(ResultJson(r).dump(), "application/json");
    });
    http.Get("/stream", [this](const httplib::Request&, httplib::Response& res) {
      std::uint64_t cursor;
      {
        std::lock_guard<std::mutex> lock(ring_mu);
        cursor = next_seq;
      }
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "application/x-ndjson", [this, cursor](std::size_t, httplib::DataSink& sink) mutable {
            std::string chunk;
            {
              std::unique_lock<std::mutex> lock(ring_mu);
              ring_cv.wait_for(lock, std::chrono::milliseconds(100),
                               [&] { return stream_stopping || next_seq > cursor; });
              if (stream_stopping) {
                lock.unlock();
                sink.done();
                return true;
              }
              const std::uint64_t oldest = next_seq - ring.size();
              cursor = std::max(cursor, oldest);
              for (; cursor < next_seq; ++cursor) {
                chunk += ring[static_cast<std::size_t>(cursor - oldest)];
                chunk += '\n';
              }
            }
            if (!chunk.empty() && !sink.write(chunk.data(), chunk.size())) return false;
            return sink.is_writable();
          });
    });
  }

  RunConfig config;
  Simulation sim;
  std::mutex sim_mu;

  std::mutex queue_mu;
  std::condition_variable queue_cv;
  std::deque<PendingControl> queue;
  bool stopping = false;

  std::mutex ring_mu;
  std::condition_variable ring_cv;
  std::deque<std::string> ring;
  std::uint64_t next_seq = 0;
  bool stream_stopping = false;

  httplib::Server http;
  std::thread loop;
  std::thread listener;
};

Server::Server(const RunConfig& cfg) : impl_(std::make_unique<Impl>(cfg)) {
  impl_->InstallRoutes();
}

Server::~Server() { Stop(); }

int Server::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIoError, "cannot bind to " + host);
  } else if (!impl_->http.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIoError, "cannot bind to " + host + ":" + std::to_string(port));
  }
  impl_->loop = std::thread([this] { impl_->Loop(); });
  impl_->listener = std::thread([this] { impl_->http.listen_after_bind(); });
  return bound;
}

void Server::Wait() {
  if (impl_->listener.joinable()) impl_->listener.join();
}

void Server::Stop() {
  if (!impl_) return;
  {
    std::lock_guard<std::mutex> lock(impl_->ring_mu);
    impl_->stream_stopping = true;
  }
  impl_->ring_cv.notify_all();
  impl_->http.stop();
  if (impl_->listener.joinable()) impl_->listener.join();
  {
    std::lock_guard<std::mutex> lock(impl_->queue_mu);
    impl_->stopping = true;
  }
  impl_->queue_cv.notify_all();
  if (impl_->loop.joinable()) impl_->loop.join();
}

ControlResult Server::Submit(const ControlAction& action) { return impl_->Submit(action); }

SessionSnapshot Server::Snapshot() {
  std::lock_guard<std::mutex> lock(impl_->sim_mu);
  return impl_->sim.Snapshot();
}

}  // namespace midas::service

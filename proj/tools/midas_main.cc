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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "midas/error.h"
#include "midas/instruments.h"
#include "midas/service.h"
#include "midas/session.h"
#include "midas/sessionlog.h"

namespace {

using midas::service::kExitConfig;
using midas::service::kExitIo;
using midas::service::kExitOk;
using midas::service::kExitSimulation;
using midas::service::kExitUsage;

int ExitCodeFor(const midas::Error& e) {
  switch (e.code()) {
    case midas::ErrorCode::kIoError: return kExitIo;
    case midas::ErrorCode::kConfigError: return kExitConfig;
    case midas::ErrorCode::kParseError:
    case midas::ErrorCode::kMalformedRecord: return kExitIo;
    default: return kExitSimulation;
  }
}

midas::service::RunConfig LoadOrDefault(const std::string& path) {
  if (path.empty()) return {};
  return midas::service::LoadRunConfig(path);
}

int Sim(const std::string& config, std::optional<std::uint64_t> seed, const std::string& trace,
        const std::string& out, const std::string& log) {
  auto cfg = LoadOrDefault(config);
  if (seed) cfg.seed = *seed;
  if (!trace.empty()) cfg.trace_path = trace;
  if (!out.empty()) cfg.report_path = out;
  if (!log.empty()) cfg.log_path = log;
  return midas::service::RunHeadless(cfg, std::cout, std::cerr);
}

int Replay(const std::string& path, const std::string& out) {
  const midas::SessionLog log = midas::SessionLog::ReadCsvFile(path);
  const std::string report = midas::ReportToJson(midas::ReplaySession(log));
  if (out.empty()) {
    std::cout << report;
    return kExitOk;
  }
  std::ofstream f(out);
  if (!(f << report)) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

int Score(const std::string& instrument_name, const std::string& in, const std::string& out,
          const std::string& format) {
  const auto instrument = midas::scales::ParseInstrument(instrument_name);
  if (!instrument) {
    std::cerr << "error: unknown instrument '" << instrument_name << "'\n";
    return kExitUsage;
  }
  std::ifstream f(in, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open '" << in << "'\n";
    return kExitIo;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  const auto report = midas::scales::ScoreInstrumentCsv(*instrument, ss.str());
  const std::string text = format == "json" ? report.ToJson() : report.ToText();
  if (out.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream o(out);
  if (!(o << text)) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

int Serve(const std::string& config, const std::string& host, int port) {
  midas::service::Server server(LoadOrDefault(config));
  const int bound = server.Start(host, port);
  std::cerr << "listening on http://" << host << ":" << bound << "\n";
  server.Wait();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIDAS rehabilitation session simulator"};
  app.require_subcommand(1);

  std::string config, trace, out, log_out, log_in, instrument, in, format = "text";
  std::string host = "127.0.0.1";
  std::optional<std::uint64_t> seed;
  int port = 8080;

  auto* sim = app.add_subcommand("sim", "Run a headless session and print the report");
  sim->add_option("--config", config, "Run configuration (JSON)");
  sim->add_option("--seed", seed, "Link seed (overrides the config)");
  sim->add_option("--trace", trace, "EMG trace CSV (t_ms,value)");
  sim->add_option("--out", out, "Report path (default stdout)");
  sim->add_option("--log", log_out, "Session log CSV path");

  auto* replay = app.add_subcommand("replay", "Rebuild a report from a session log");
  replay->add_option("--log", log_in, "Session log CSV")->required();
  replay->add_option("--out", out, "Report path (default stdout)");

  auto* score = app.add_subcommand("score", "Score questionnaire responses");
  score->add_option("--instrument", instrument, "mas, moca, srms, sam, ueq or whoqol")
      ->required();
  score->add_option("--in", in, "Responses CSV")->required();
  score->add_option("--out", out, "Output path (default stdout)");
  score->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* serve = app.add_subcommand("serve", "Serve a live session over HTTP");
  serve->add_option("--config", config, "Run configuration (JSON)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sim) return Sim(config, seed, trace, out, log_out);
    if (*replay) return Replay(log_in, out);
    if (*score) return Score(instrument, in, out, format);
    if (*serve) return Serve(config, host, port);
  } catch (const midas::Error& e) {
    std::cerr << "error: " << midas::ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitUsage;
}

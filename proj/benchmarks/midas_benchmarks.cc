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

#include <benchmark/benchmark.h>

#include "midas/netlink.h"
#include "midas/rng.h"
#include "midas/session.h"
#include "midas/signals.h"

namespace {

void BM_MovingAverage(benchmark::State& state) {
  midas::Rng rng(1);
  std::vector<int> x(10000);
  for (int& v : x) v = static_cast<int>(rng.UniformInt(midas::kAdcMax));
  for (auto _ : state) {
    midas::MovingAverage ma(50);
    double acc = 0;
    for (int v : x) acc += ma.Push(v);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_MovingAverage);

void BM_Crc16(benchmark::State& state) {
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(state.range(0)), 0x5A);
  for (auto _ : state) benchmark::DoNotOptimize(midas::Crc16(bytes));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Crc16)->Arg(16)->Arg(256);

void BM_EncodeDecode(benchmark::State& state) {
  midas::Frame f;
  f.type = midas::MsgType::kEmgFiltered;
  f.src = 2;
  f.dst = 5;
  f.payload.assign(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    auto bytes = midas::EncodeFrame(f);
    benchmark::DoNotOptimize(midas::DecodeFrame(bytes));
  }
}
BENCHMARK(BM_EncodeDecode)->Arg(8)->Arg(256);

void BM_SessionRun(benchmark::State& state) {
  std::vector<midas::Gesture> g;
  for (int i = 0; i < 5; ++i) g.push_back({3000 + 2500 * i, 1200});
  const midas::EmgTrace trace = midas::SynthEmg(g, 5.0, 1);
  midas::SessionConfig cfg;
  cfg.game.stage_duration_ms = 20000;
  for (auto _ : state) {
    auto result = midas::RunSession(trace, cfg);
    benchmark::DoNotOptimize(result.report.total_score);
  }
}
BENCHMARK(BM_SessionRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

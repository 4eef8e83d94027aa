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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "midas/actuation.h"
#include "midas/error.h"
#include "midas/instruments.h"
#include "midas/netlink.h"
#include "midas/rng.h"
#include "midas/scales.h"
#include "midas/session.h"
#include "midas/signals.h"
#include "oracles.h"

namespace {

using namespace midas;

struct Check {
  bool ok = true;
  std::string detail;

  void Expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

Check FilterOracle() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(20240601);
  std::size_t samples = 0;
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    const std::size_t n = 1 + rng.UniformInt(9999);
    std::vector<int> x(n);
    for (int& v : x) v = static_cast<int>(rng.UniformInt(kAdcMax));
    MovingAverage ma(50);
    for (std::size_t i = 0; i < n; ++i) {
      const double got = ma.Push(x[i]);
      if (got != oracle::WindowMean(x, i, 50)) {
        c.Expect(false, "trace " + std::to_string(trial) + " index " + std::to_string(i));
        break;
      }
    }
    samples += n;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.Expect(secs < 10.0, "runtime " + Fmt("%.2f", secs) + " s");
  if (c.ok) {
    c.detail = "1000 traces, " + std::to_string(samples) + " samples, W=50, exact, " +
               Fmt("%.2f", secs) + " s";
  }
  return c;
}

Check ServoTiming() {
  Check c;
  auto time_to = [](double target) {
    ServoState s = Command({}, target);
    int ticks = 0;
    while (s.theta_deg != s.target_deg && ticks < 100000) {
      s = Step(s, 0.001);
      ++ticks;
    }
    return ticks * 0.001;
  };
  const double t60 = time_to(60);
  const double t180 = time_to(180);
  c.Expect(std::abs(t60 - 0.170) <= 0.001 + 1e-12, "0->60 took " + Fmt("%.3f", t60));
  c.Expect(std::abs(t180 - 0.510) <= 0.001 + 1e-12, "0->180 took " + Fmt("%.3f", t180));
  if (c.ok) c.detail = "0->60 in " + Fmt("%.3f", t60) + " s, 0->180 in " + Fmt("%.3f", t180) + " s";
  return c;
}

Check Kinematics() {
  Check c;
  const LinkageModel m;
  const double h_deg = 1e-3;
  const double h_rad = h_deg * M_PI / 180.0;
  double worst = 0;
  for (double end : {0.0, 180.0}) {
    const double d =
        (LinkagePosition(end + h_deg, m) - LinkagePosition(end - h_deg, m)) / (2 * h_rad);
    worst = std::max(worst, std::abs(d));
    c.Expect(std::abs(d) < 1e-6 * m.stroke_mm, "slope at " + Fmt("%.0f", end) + " is " +
                                                   Fmt("%.3g", d));
  }
  double prev = LinkagePosition(0, m);
  for (int i = 1; i <= 1800; ++i) {
    const double x = LinkagePosition(i * 0.1, m);
    c.Expect(x > prev, "not increasing at " + Fmt("%.1f", i * 0.1) + " deg");
    prev = x;
  }
  if (c.ok) c.detail = "max |dx/dtheta| at ends " + Fmt("%.2g", worst) + " mm/rad, monotone over 1801 angles";
  return c;
}

Frame RandomFrame(Rng& rng) {
  Frame f;
  f.type = static_cast<MsgType>(1 + rng.UniformInt(8));
  f.seq = static_cast<std::uint16_t>(rng.UniformInt(0xFFFF));
  f.src = static_cast<std::uint8_t>(rng.UniformInt(255));
  f.dst = static_cast<std::uint8_t>(rng.UniformInt(255));
  f.payload.resize(rng.UniformInt(kMaxPayload));
  for (auto& b : f.payload) b = static_cast<std::uint8_t>(rng.UniformInt(255));
  return f;
}

Check Protocol() {
  Check c;
  Rng rng(77);
  for (int i = 0; i < 10000 && c.ok; ++i) {
    const Frame f = RandomFrame(rng);
    const auto r = DecodeFrame(EncodeFrame(f));
    c.Expect(r.ok() && r.frame == f, "round trip failed on frame " + std::to_string(i));
  }
  std::size_t flips = 0;
  for (int i = 0; i < 100 && c.ok; ++i) {
    const auto bytes = EncodeFrame(RandomFrame(rng));
    for (std::size_t bit = 0; bit < bytes.size() * 8; ++bit) {
      auto corrupt = bytes;
      corrupt[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      ++flips;
      c.Expect(!DecodeFrame(corrupt).ok(), "undetected flip in frame " + std::to_string(i));
    }
  }

  // FIFO per pair with random jitter, no loss.
  std::size_t fifo_frames = 0;
  for (std::uint64_t seed = 1; seed <= 10 && c.ok; ++seed) {
    LinkConfig cfg;
    cfg.jitter_ms = 30;
    cfg.seed = seed;
    Hub hub(cfg);
    for (std::uint8_t n = 0; n <= 5; ++n) hub.Register(n);
    Rng traffic(seed + 1000);
    std::map<std::pair<int, int>, std::uint16_t> sent_seq, seen_seq;
    std::size_t sent = 0, got = 0;
    for (std::int64_t t = 0; t < 5000; ++t) {
      if (t < 4000 && traffic.UniformInt(1) == 0) {
        Frame f;
        f.src = static_cast<std::uint8_t>(1 + traffic.UniformInt(4));
        f.dst = static_cast<std::uint8_t>(1 + traffic.UniformInt(4));
        if (f.dst == f.src) f.dst = node::kHub;
        f.seq = sent_seq[{f.src, f.dst}]++;
        f.payload.resize(traffic.UniformInt(16));
        hub.Send(f, t);
        ++sent;
      }
      for (const auto& d : hub.TransportStep(t)) {
        auto& want = seen_seq[{d.frame.src, d.to}];
        c.Expect(d.frame.seq == want, "FIFO violated, seed " + std::to_string(seed));
        want = static_cast<std::uint16_t>(d.frame.seq + 1);
        ++got;
      }
    }
    c.Expect(sent == got, "frames lost with loss_prob=0");
    fifo_frames += got;
  }

  // Saturate the line for 10 s and measure what gets through.
  Hub hub(LinkConfig{});
  for (std::uint8_t n = 0; n <= 5; ++n) hub.Register(n);
  std::uint64_t bytes = 0;
  for (std::int64_t t = 0; t <= 10000; ++t) {
    Frame f;
    f.src = 2;
    f.dst = 5;
    f.payload.resize(40);  // 50 B/ms offered, 4x the line rate
    hub.Send(f, t);
    for (const auto& d : hub.TransportStep(t)) {
      if (d.delivered_ms <= 10000) bytes += d.frame.EncodedSize();
    }
  }
  const std::uint64_t cap = 11520ull * 10 + kFrameOverhead + kMaxPayload;
  c.Expect(bytes <= cap, "delivered " + std::to_string(bytes) + " B in 10 s");
  c.Expect(bytes > 11520ull * 9, "line underused: " + std::to_string(bytes) + " B");
  if (c.ok) {
    c.detail = "10000 round trips, " + std::to_string(flips) + "/" + std::to_string(flips) +
               " bit flips caught, FIFO over " + std::to_string(fifo_frames) +
               " jittered frames, " + Fmt("%.1f", bytes / 10.0) + " B/s delivered (cap 11520)";
  }
  return c;
}

std::vector<Gesture> Scripted(int n) {
  std::vector<Gesture> g;
  for (int i = 0; i < n; ++i) g.push_back({3000 + 2500 * i, 1200});
  return g;
}

Check SessionArithmetic() {
  Check c;
  const SessionConfig defaults;
  c.Expect(defaults.game.n_stages == 5, "default stage count");

  const SessionResult idle = RunSession(SynthEmg({}, 5.0, 1), defaults);
  c.Expect(idle.report.stages.size() == 5, "stages run: " + std::to_string(idle.report.stages.size()));
  for (const auto& s : idle.report.stages) {
    c.Expect(s.elapsed_ms == 180000 && s.status == StageStatus::kTimedOut,
             "stage " + std::to_string(s.index) + " clock " + std::to_string(s.elapsed_ms));
  }

  SessionConfig no_cooldown;
  no_cooldown.olfactory.cooldown_ms = 0;
  no_cooldown.game.squeeze_targets = {20, 21, 22, 23, 24};
  std::vector<Gesture> quick;
  for (int i = 0; i < 12; ++i) quick.push_back({3000 + 1500 * i, 700});
  const SessionResult scent = RunSession(SynthEmg(quick, 5.0, 2), no_cooldown);
  c.Expect(scent.report.squeezes == 12 &&
               scent.report.scent_emissions == scent.report.squeezes,
           "scent " + std::to_string(scent.report.scent_emissions) + " vs squeezes " +
               std::to_string(scent.report.squeezes));

  const SessionResult five = RunSession(SynthEmg(Scripted(5), 5.0, 3), defaults, LinkConfig{}, 42);
  c.Expect(five.report.squeezes == 5, "scripted squeezes " + std::to_string(five.report.squeezes));
  c.Expect(five.report.stages.at(0).status == StageStatus::kComplete, "stage 1 not complete");
  if (c.ok) {
    c.detail = "stage clocks cap at 180000 ms, 5 stages, " +
               std::to_string(scent.report.scent_emissions) + " scents = " +
               std::to_string(scent.report.squeezes) +
               " squeezes, 5 scripted gestures complete stage 1";
  }
  return c;
}

Check ReplayDeterminism() {
  Check c;
  SessionConfig cfg;
  cfg.link.jitter_ms = 8;
  cfg.link.loss_prob = 0.05;
  cfg.game.stage_duration_ms = 30000;
  const EmgTrace trace = SynthEmg(Scripted(9), 10.0, 5);
  const SessionResult a = RunSession(trace, cfg, cfg.link, 1234);
  const SessionResult b = RunSession(trace, cfg, cfg.link, 1234);
  const std::string log_a = a.log.ToCsv();
  c.Expect(log_a == b.log.ToCsv(), "logs differ between identical runs");
  const SessionReport replayed = ReplaySession(SessionLog::ParseCsv(log_a));
  c.Expect(replayed == a.report, "replayed report differs");
  if (c.ok) {
    c.detail = std::to_string(log_a.size()) + "-byte logs identical, replay matches report (" +
               std::to_string(a.report.squeezes) + " squeezes, " +
               std::to_string(a.report.frames_dropped) + " drops)";
  }
  return c;
}

Check InstrumentBounds() {
  using namespace midas::scales;
  Check c;
  auto throws_out_of_range = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code() == ErrorCode::kOutOfRange;
    }
    return false;
  };

  // MAS: every item combination, tonus never counted.
  long mas_cases = 0;
  MasResponse mas;
  std::array<int, 8>& it = mas.items;
  for (long code = 0; code < 5764801; ++code) {  // 7^8
    long rest = code;
    int sum = 0;
    for (int& v : it) {
      v = static_cast<int>(rest % 7);
      rest /= 7;
      sum += v;
    }
    mas.general_tonus = static_cast<int>(code % 7);
    const MasScore s = ScoreMas(mas);
    if (s.total != sum || s.total < 0 || s.total > 48) {
      c.Expect(false, "MAS total wrong");
      break;
    }
    ++mas_cases;
  }
  for (std::size_t i = 0; i < 8; ++i) {
    for (int bad : {-1, 7}) {
      MasResponse b;
      b.items[i] = bad;
      c.Expect(throws_out_of_range([&] { ScoreMas(b); }), "MAS item accepted " + std::to_string(bad));
    }
  }

  for (int raw = 0; raw <= 30; ++raw) {
    for (int edu = 0; edu <= 30; ++edu) {
      const int want = std::min(30, raw + (edu <= 12 ? 1 : 0));
      const MocaScore s = ScoreMoca({raw, edu});
      c.Expect(s.adjusted == want && s.normal == (want >= 26), "MoCA rule broken");
    }
  }
  c.Expect(throws_out_of_range([] { ScoreMoca({31, 0}); }), "MoCA 31 accepted");

  SrmsResponse srms;
  for (int code = 0; code < 78125; ++code) {  // 5^7
    int rest = code, sum = 0;
    for (int& v : srms.items) {
      v = 1 + rest % 5;
      rest /= 5;
      sum += v;
    }
    const int s = ScoreSrms(srms);
    if (s != sum || s < 7 || s > 35) {
      c.Expect(false, "SRMS total wrong");
      break;
    }
  }
  for (int bad : {0, 6}) {
    SrmsResponse b;
    b.items.fill(3);
    b.items[6] = bad;
    c.Expect(throws_out_of_range([&] { ScoreSrms(b); }), "SRMS accepted " + std::to_string(bad));
  }

  UeqResponse ueq;
  for (long code = 0; code < 5764801; ++code) {  // 7^8
    long rest = code;
    int sum = 0;
    for (int& v : ueq.items) {
      v = 1 + static_cast<int>(rest % 7);
      rest /= 7;
      sum += v;
    }
    const int s = ScoreUeq(ueq);
    if (s != sum || s < 8 || s > 56) {
      c.Expect(false, "UEQ total wrong");
      break;
    }
  }
  for (int bad : {0, 8}) {
    UeqResponse b;
    b.items.fill(4);
    b.items[0] = bad;
    c.Expect(throws_out_of_range([&] { ScoreUeq(b); }), "UEQ accepted " + std::to_string(bad));
  }
  if (c.ok) {
    c.detail = "MAS " + std::to_string(mas_cases) +
               " combos in [0,48] tonus excluded, MoCA 31x31 grid cutoff 26, SRMS 78125 in "
               "[7,35], UEQ 5764801 in [8,56], out-of-range cells rejected";
  }
  return c;
}

std::string ReadFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Check TableReproduction(std::string& note) {
  using namespace midas::scales;
  Check c;
  const std::string data = MIDAS_DATA_DIR;
  const InstrumentReport srms =
      ScoreInstrumentCsv(Instrument::kSrms, ReadFile(data + "/srms_ratings.csv"));
  const LikertSection& all = srms.likert.at(0);
  c.Expect(all.table.n_respondents == 15, "expected 15 SRMS ratings");
  const std::vector<double> want_tenths = {100.0, 73.3, 80.0, 93.3, 93.3, 86.7, 60.0};
  const std::vector<int> want_counts = {15, 11, 12, 14, 14, 13, 9};
  std::vector<Percentage> agree;
  for (const auto& u : all.unions) {
    if (u.name == "agree") agree.push_back(u.percentage);
  }
  c.Expect(agree.size() == 7, "expected 7 agree unions");
  std::string got;
  for (std::size_t q = 0; q < agree.size() && q < 7; ++q) {
    c.Expect(agree[q].count == want_counts[q], "Q" + std::to_string(q + 1) + " count");
    c.Expect(agree[q].exact == 100.0 * want_counts[q] / 15, "Q" + std::to_string(q + 1) + " exact");
    c.Expect(agree[q].tenths == want_tenths[q],
             "Q" + std::to_string(q + 1) + " = " + Fmt("%.1f", agree[q].tenths));
    got += (q ? "/" : "") + Fmt("%.1f", agree[q].tenths);
  }
  // Quoted in the text: Q2 73, Q3 80, Q5 94, Q6 87, Q7 60.
  const std::vector<std::pair<int, int>> quoted = {{2, 73}, {3, 80}, {5, 94}, {6, 87}, {7, 60}};
  const std::vector<int> display_want = {73, 80, 93, 87, 60};
  std::string shown;
  for (std::size_t i = 0; i < quoted.size() && agree.size() == 7; ++i) {
    const Percentage& p = agree[static_cast<std::size_t>(quoted[i].first - 1)];
    c.Expect(p.display == display_want[i], "display Q" + std::to_string(quoted[i].first));
    c.Expect(std::abs(p.exact - quoted[i].second) < 1.0,
             "quoted Q" + std::to_string(quoted[i].first) + " too far from exact");
    shown += (i ? "/" : "") + std::to_string(p.display);
    if (p.display != quoted[i].second) {
      note += "Q" + std::to_string(quoted[i].first) + " exact " + Fmt("%.1f", p.exact) +
              "% displays as " + std::to_string(p.display) + " (half-up); the text quotes " +
              std::to_string(quoted[i].second) + ". ";
    }
  }

  const InstrumentReport ueq =
      ScoreInstrumentCsv(Instrument::kUeq, ReadFile(data + "/ueq_ratings.csv"));
  const LikertSection* first = nullptr;
  for (const auto& s : ueq.likert) {
    if (s.group == "session 1") first = &s;
  }
  double easy = -1;
  if (first) {
    for (const auto& row : first->rows) {
      if (row.label == "easy") easy = row.percentages.at(2).exact;  // slightly disagree
    }
  }
  c.Expect(first && first->table.n_respondents == 5, "UEQ session 1 needs 5 subjects");
  c.Expect(easy == 80.0, "Easy slightly-disagree = " + Fmt("%.1f", easy));
  if (c.ok) {
    c.detail = "SRMS agree " + got + " (display " + shown + "), UEQ Easy 1st-session "
               "slightly disagree " + Fmt("%.1f", easy) + "%";
  }
  return c;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](const char* name, const Check& c) {
    std::printf("%s %s: %s\n", c.ok ? "PASS" : "FAIL", name, c.detail.c_str());
    std::fflush(stdout);
    failures += c.ok ? 0 : 1;
  };
  auto guarded = [&](const char* name, const std::function<Check()>& fn) {
    try {
      report(name, fn());
    } catch (const std::exception& e) {
      report(name, Check{false, std::string("exception: ") + e.what()});
    }
  };

  guarded("filter_oracle", FilterOracle);
  guarded("servo_timing", ServoTiming);
  guarded("kinematics", Kinematics);
  guarded("protocol", Protocol);
  guarded("session_arithmetic", SessionArithmetic);
  guarded("replay_determinism", ReplayDeterminism);
  guarded("instrument_bounds", InstrumentBounds);
  std::string note;
  guarded("table_reproduction", [&] { return TableReproduction(note); });
  if (!note.empty()) std::printf("note: %s\n", note.c_str());
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

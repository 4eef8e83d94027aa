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

#ifndef MIDAS_RNG_H_
#define MIDAS_RNG_H_

#include <cstdint>
#include <random>

namespace midas {

// Seeded generator whose derived distributions are computed here rather than
// by <random>'s distribution classes, whose output is implementation-defined.
// mt19937_64 itself is fully specified, so traces and network schedules are
// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound] inclusive.
  std::int64_t UniformInt(std::int64_t bound) {
    if (bound <= 0) return 0;
    return static_cast<std::int64_t>(engine_() %
                                     static_cast<std::uint64_t>(bound + 1));
  }

  // Standard normal via Box-Muller; the second variate is cached.
  double Normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace midas

#endif  // MIDAS_RNG_H_

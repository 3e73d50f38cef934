// Copyright 2026 The cslpq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSLPQ_SRC_RNG_HPP
#define CSLPQ_SRC_RNG_HPP

#include <cstdint>
#include <random>

namespace cslpq {

/// Seeded random source built on std::mt19937_64 (whose output stream is
/// fixed by the standard) with hand-rolled draws, since the standard
/// distributions are implementation-defined and would break cross-platform
/// reproducibility of outcome reports.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Unbiased integer in [0, bound) via rejection sampling. bound > 0.
  uint64_t uniform_below(uint64_t bound);

  /// Inclusive integer range.
  int64_t uniform_int(int64_t lo, int64_t hi);

  /// Double in [0, 1) with 53 random bits.
  double uniform_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Stable per-repetition seed derivation (splitmix64 of master + index).
  static uint64_t child_seed(uint64_t master, uint64_t index);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cslpq

#endif  // CSLPQ_SRC_RNG_HPP

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

#include "rng.hpp"

#include "error.hpp"

namespace cslpq {

uint64_t Rng::uniform_below(uint64_t bound) {
  if (bound == 0) {
    throw Error(ErrorCode::invalid_argument, "uniform_below: bound must be positive");
  }
  // Reject the low remainder zone so every residue is equally likely.
  const uint64_t threshold = (~bound + 1) % bound;  // (2^64 - bound) mod bound
  for (;;) {
    const uint64_t r = engine_();
    if (r >= threshold) {
      return r % bound;
    }
  }
}

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
  if (lo > hi) {
    throw Error(ErrorCode::invalid_argument, "uniform_int: empty range");
  }
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int64_t>(uniform_below(span));
}

uint64_t Rng::child_seed(uint64_t master, uint64_t index) {
  // splitmix64 finalizer over master advanced by the golden-ratio increment.
  uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace cslpq

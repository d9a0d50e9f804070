// Copyright 2026 The gnas Authors.
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

#ifndef GNAS_RANDOM_H_
#define GNAS_RANDOM_H_

#include <cstdint>
#include <limits>

namespace gnas {

// splitmix64 output finalizer (Steele, Lea & Flood constants).
constexpr uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Top 53 bits of `h` as a double in [0, 1).
constexpr double UnitInterval(uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// A splitmix64 stream. Every draw advances the state by the golden gamma, so
// two streams with the same starting state produce identical sequences on
// any platform.
class RandomStream {
 public:
  using result_type = uint64_t;

  explicit RandomStream(uint64_t state) : state_(state) {}

  uint64_t Next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix64(state_);
  }

  // Uniform integer in [0, bound) without modulo bias: draws falling in the
  // incomplete final block of 2^64 are rejected.
  uint64_t UniformBelow(uint64_t bound);

  // Uniform double in [0, 1).
  double UniformUnit() { return UnitInterval(Next()); }

  uint64_t state() const { return state_; }

  // UniformRandomBitGenerator surface, for <algorithm> interop.
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() {
    return std::numeric_limits<uint64_t>::max();
  }
  uint64_t operator()() { return Next(); }

 private:
  uint64_t state_;
};

}  // namespace gnas

#endif  // GNAS_RANDOM_H_

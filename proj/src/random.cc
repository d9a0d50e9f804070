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

#include "gnas/random.h"

#include <stdexcept>

namespace gnas {

uint64_t RandomStream::UniformBelow(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformBelow: bound is zero");
  // 2^64 mod bound, computed in 64-bit arithmetic.
  const uint64_t remainder = (0 - bound) % bound;
  const uint64_t limit = std::numeric_limits<uint64_t>::max() - remainder;
  uint64_t draw = Next();
  while (draw > limit) draw = Next();
  return draw % bound;
}

}  // namespace gnas

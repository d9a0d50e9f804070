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

#ifndef GNAS_FITNESS_RECORD_H_
#define GNAS_FITNESS_RECORD_H_

#include <string>

#include "gnas/search_space.h"

namespace gnas {

enum class Origin { kInit, kChild };

// An evaluated architecture. `fitness` is the validation metric, in [0, 1].
struct FitnessRecord {
  Architecture arch;
  std::string key;  // canonical string of `arch`
  double fitness = 0.0;
  Origin origin = Origin::kInit;
  int worker = 0;
  int epoch = 0;
};

}  // namespace gnas

#endif  // GNAS_FITNESS_RECORD_H_

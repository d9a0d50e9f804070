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

#ifndef GNAS_LANDSCAPE_H_
#define GNAS_LANDSCAPE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gnas/evaluation.h"
#include "gnas/search.h"
#include "gnas/search_space.h"

namespace gnas {

inline constexpr uint64_t kDefaultEnumerationCap = 1'000'000;

// Every architecture of a small space with its fitness, in lexicographic
// gene order. Throws SpaceTooLargeError beyond `cap`, or std::runtime_error
// if the backend fails on any architecture.
struct Landscape {
  std::vector<std::pair<std::string, double>> entries;
  std::vector<double> descending;  // all fitnesses, best first

  // Fitness of the architecture at 1-based descending rank
  // ceil(fraction * size): reaching it puts a result in the top `fraction`.
  double TopFractionThreshold(double fraction) const;
  const std::pair<std::string, double>& Best() const;
};

Landscape EnumerateLandscape(const SearchSpace& space, FitnessBackend& backend,
                             uint64_t cap = kDefaultEnumerationCap);

// 1-based unique-evaluation count at which the log first reaches `target`.
std::optional<int64_t> EvaluationsToReach(
    const std::vector<EvaluationLogEntry>& log, double target);

}  // namespace gnas

#endif  // GNAS_LANDSCAPE_H_

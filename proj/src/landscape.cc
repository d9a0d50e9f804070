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

#include "gnas/landscape.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace gnas {

double Landscape::TopFractionThreshold(double fraction) const {
  if (descending.empty()) throw std::logic_error("empty landscape");
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("fraction must be in (0, 1]");
  }
  const auto rank = static_cast<size_t>(
      std::ceil(fraction * static_cast<double>(descending.size())));
  return descending[std::clamp<size_t>(rank, 1, descending.size()) - 1];
}

const std::pair<std::string, double>& Landscape::Best() const {
  if (entries.empty()) throw std::logic_error("empty landscape");
  // First maximum in lexicographic order.
  return *std::max_element(
      entries.begin(), entries.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
}

Landscape EnumerateLandscape(const SearchSpace& space, FitnessBackend& backend,
                             uint64_t cap) {
  std::vector<Architecture> archs;
  EnumerateSpace(space, cap, [&](const Architecture& arch) {
    archs.push_back(arch);
    return true;
  });
  const auto outcomes = backend.Evaluate(archs);
  Landscape landscape;
  landscape.entries.reserve(archs.size());
  for (size_t i = 0; i < archs.size(); ++i) {
    const std::string key = EncodeArchitecture(space, archs[i]);
    if (i >= outcomes.size() || !outcomes[i].fitness) {
      throw std::runtime_error("evaluation of '" + key + "' failed: " +
                               (i < outcomes.size() ? outcomes[i].error : ""));
    }
    landscape.entries.emplace_back(key, *outcomes[i].fitness);
    landscape.descending.push_back(*outcomes[i].fitness);
  }
  std::sort(landscape.descending.begin(), landscape.descending.end(),
            std::greater<double>());
  return landscape;
}

std::optional<int64_t> EvaluationsToReach(
    const std::vector<EvaluationLogEntry>& log, double target) {
  for (const auto& entry : log) {
    if (entry.fitness >= target) return entry.index;
  }
  return std::nullopt;
}

}  // namespace gnas

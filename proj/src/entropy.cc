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

#include "gnas/entropy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gnas {

FrequencyTable ComponentFrequencies(std::span<const FitnessRecord> population,
                                    int position) {
  if (population.empty()) {
    throw std::invalid_argument("ComponentFrequencies: empty population");
  }
  FrequencyTable table;
  table.position = position;
  for (const auto& record : population) {
    if (position < 0 ||
        position >= static_cast<int>(record.arch.genes.size())) {
      throw std::invalid_argument("ComponentFrequencies: position " +
                                  std::to_string(position) + " out of range");
    }
    ++table.counts[record.arch.genes[position]];
    ++table.total;
  }
  return table;
}

EntropyVector ComputeEntropy(std::span<const FitnessRecord> population,
                             const SearchSpace& space) {
  EntropyVector entropy(space.num_positions(), 0.0);
  for (int i = 0; i < space.num_positions(); ++i) {
    const FrequencyTable table = ComponentFrequencies(population, i);
    const double total = table.total;
    double h = 0.0;
    for (const auto& [value, count] : table.counts) {
      const double f = count / total;
      h -= f * std::log2(f);
    }
    // A single observed value gives -1*log2(1) = -0.0.
    entropy[i] = std::max(h, 0.0);
  }
  return entropy;
}

MutationProbabilities MutationProbabilitiesFromEntropy(
    std::span<const double> entropy) {
  if (entropy.empty()) {
    throw std::invalid_argument("MutationProbabilities: empty entropy vector");
  }
  const double peak = *std::max_element(entropy.begin(), entropy.end());
  MutationProbabilities p(entropy.size());
  double sum = 0.0;
  for (size_t i = 0; i < entropy.size(); ++i) {
    p[i] = std::exp(entropy[i] - peak);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace gnas

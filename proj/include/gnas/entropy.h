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

// Entropy guidance for mutation. For every genome position i the value
// distribution inside the sharing population gives a Shannon entropy
//
//   h_i = -sum_j f_j log2 f_j,   f_j = count_j / population size,
//
// and the mutation selection probabilities are softmax(h). Positions whose
// values are still diverse among good architectures are mutated more often;
// positions the population has converged on are mostly left alone.

#ifndef GNAS_ENTROPY_H_
#define GNAS_ENTROPY_H_

#include <map>
#include <span>
#include <vector>

#include "gnas/fitness_record.h"
#include "gnas/search_space.h"

namespace gnas {

struct FrequencyTable {
  int position = 0;
  std::map<int, int> counts;  // value index -> occurrences
  int total = 0;
};

// Bits, one entry per genome position.
using EntropyVector = std::vector<double>;
// Strictly positive, sums to 1.
using MutationProbabilities = std::vector<double>;

// Throws std::invalid_argument for an empty population or bad position.
FrequencyTable ComponentFrequencies(std::span<const FitnessRecord> population,
                                    int position);

EntropyVector ComputeEntropy(std::span<const FitnessRecord> population,
                             const SearchSpace& space);

// Max-subtracted softmax over the entropies.
MutationProbabilities MutationProbabilitiesFromEntropy(
    std::span<const double> entropy);

}  // namespace gnas

#endif  // GNAS_ENTROPY_H_

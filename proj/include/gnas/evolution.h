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

#ifndef GNAS_EVOLUTION_H_
#define GNAS_EVOLUTION_H_

#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "gnas/entropy.h"
#include "gnas/fitness_record.h"
#include "gnas/random.h"
#include "gnas/search_space.h"

namespace gnas {

// Append-only archive of good architectures shared by all workers. Records
// are unique by canonical string and never evicted; the top-n view drives the
// admission threshold.
class SharingPopulation {
 public:
  explicit SharingPopulation(int top_n);

  int top_n() const { return top_n_; }
  const std::vector<FitnessRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  bool Contains(const std::string& key) const { return keys_.contains(key); }

  // False (and no change) if the architecture is already archived.
  bool Add(FitnessRecord record);

 private:
  int top_n_;
  std::vector<FitnessRecord> records_;
  std::unordered_set<std::string> keys_;
};

struct AdmissionReport {
  int admitted = 0;
  int rejected = 0;
  int duplicates = 0;
};

// The n highest-fitness records, best first. Ties keep archive order (the
// earlier insertion wins), which also makes the result independent of thread
// scheduling. Throws std::invalid_argument on an empty archive or n < 1.
std::vector<FitnessRecord> SelectTopN(std::span<const FitnessRecord> archive,
                                      int n);

// Mean fitness of SelectTopN(archive, n).
double AdmissionThreshold(std::span<const FitnessRecord> archive, int n);

// k roulette draws with replacement. All-zero fitness falls back to uniform.
std::vector<FitnessRecord> WheelSelect(std::span<const FitnessRecord> population,
                                       int k, RandomStream& rng);

// Picks m distinct positions by sequential draws from `probabilities`
// (renormalized over positions not yet chosen; single-value positions are
// never eligible), then gives each chosen position a uniformly drawn value
// different from the current one. Position draws happen before value draws.
// Throws std::invalid_argument if m exceeds the eligible positions.
Architecture Mutate(const Architecture& parent,
                    std::span<const double> probabilities, int m,
                    const SearchSpace& space, RandomStream& rng);

// Appends, in the given order, the children whose fitness is strictly above
// `threshold` and whose architecture is not archived yet.
AdmissionReport MergeChildren(SharingPopulation& population,
                              std::span<const FitnessRecord> children,
                              double threshold);

}  // namespace gnas

#endif  // GNAS_EVOLUTION_H_

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

#include "gnas/evolution.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace gnas {

SharingPopulation::SharingPopulation(int top_n) : top_n_(top_n) {
  if (top_n_ < 1) throw std::invalid_argument("top_n must be >= 1");
}

bool SharingPopulation::Add(FitnessRecord record) {
  if (!keys_.insert(record.key).second) return false;
  records_.push_back(std::move(record));
  return true;
}

std::vector<FitnessRecord> SelectTopN(std::span<const FitnessRecord> archive,
                                      int n) {
  if (archive.empty()) throw std::invalid_argument("SelectTopN: empty archive");
  if (n < 1) throw std::invalid_argument("SelectTopN: n must be >= 1");
  std::vector<size_t> order(archive.size());
  std::iota(order.begin(), order.end(), size_t{0});
  const size_t count = std::min(order.size(), static_cast<size_t>(n));
  // Index order is insertion order, so comparing indices on ties gives the
  // earlier-inserted record priority.
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&](size_t a, size_t b) {
                      if (archive[a].fitness != archive[b].fitness) {
                        return archive[a].fitness > archive[b].fitness;
                      }
                      if (a != b) return a < b;
                      return archive[a].key < archive[b].key;
                    });
  std::vector<FitnessRecord> top;
  top.reserve(count);
  for (size_t i = 0; i < count; ++i) top.push_back(archive[order[i]]);
  return top;
}

double AdmissionThreshold(std::span<const FitnessRecord> archive, int n) {
  const auto top = SelectTopN(archive, n);
  double sum = 0.0;
  for (const auto& r : top) sum += r.fitness;
  return sum / static_cast<double>(top.size());
}

std::vector<FitnessRecord> WheelSelect(std::span<const FitnessRecord> population,
                                       int k, RandomStream& rng) {
  if (population.empty()) {
    throw std::invalid_argument("WheelSelect: empty population");
  }
  std::vector<double> cumulative(population.size());
  double total = 0.0;
  for (size_t i = 0; i < population.size(); ++i) {
    total += population[i].fitness;
    cumulative[i] = total;
  }
  std::vector<FitnessRecord> picked;
  picked.reserve(std::max(k, 0));
  for (int draw = 0; draw < k; ++draw) {
    size_t index;
    if (total <= 0.0) {
      index = rng.UniformBelow(population.size());
    } else {
      const double u = rng.UniformUnit() * total;
      index = std::upper_bound(cumulative.begin(), cumulative.end(), u) -
              cumulative.begin();
      index = std::min(index, population.size() - 1);
    }
    picked.push_back(population[index]);
  }
  return picked;
}

Architecture Mutate(const Architecture& parent,
                    std::span<const double> probabilities, int m,
                    const SearchSpace& space, RandomStream& rng) {
  if (!space.Contains(parent)) {
    throw std::invalid_argument("Mutate: parent is not in the space");
  }
  if (static_cast<int>(probabilities.size()) != space.num_positions()) {
    throw std::invalid_argument("Mutate: probability vector length mismatch");
  }
  if (m < 1) throw std::invalid_argument("Mutate: m must be >= 1");

  std::vector<int> eligible;
  for (int i = 0; i < space.num_positions(); ++i) {
    if (space.component(i).size() >= 2) eligible.push_back(i);
  }
  if (m > static_cast<int>(eligible.size())) {
    throw std::invalid_argument(
        "Mutate: m = " + std::to_string(m) + " exceeds the " +
        std::to_string(eligible.size()) + " mutable positions");
  }

  std::vector<int> chosen;
  chosen.reserve(m);
  for (int draw = 0; draw < m; ++draw) {
    double total = 0.0;
    for (int pos : eligible) total += probabilities[pos];
    const double u = rng.UniformUnit() * total;
    size_t pick = eligible.size() - 1;
    double running = 0.0;
    for (size_t j = 0; j < eligible.size(); ++j) {
      running += probabilities[eligible[j]];
      if (u < running) {
        pick = j;
        break;
      }
    }
    chosen.push_back(eligible[pick]);
    eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  Architecture child = parent;
  for (int pos : chosen) {
    const int current = child.genes[pos];
    const int other = static_cast<int>(
        rng.UniformBelow(static_cast<uint64_t>(space.component(pos).size() - 1)));
    child.genes[pos] = other >= current ? other + 1 : other;
  }
  return child;
}

AdmissionReport MergeChildren(SharingPopulation& population,
                              std::span<const FitnessRecord> children,
                              double threshold) {
  AdmissionReport report;
  for (const auto& child : children) {
    if (population.Contains(child.key)) {
      ++report.duplicates;
    } else if (child.fitness > threshold) {
      population.Add(child);
      ++report.admitted;
    } else {
      ++report.rejected;
    }
  }
  return report;
}

}  // namespace gnas

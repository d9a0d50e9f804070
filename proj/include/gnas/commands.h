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

#ifndef GNAS_COMMANDS_H_
#define GNAS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gnas/search.h"

namespace gnas {

inline constexpr const char* kEvolutionMethod = "sharing_evolution";
inline constexpr const char* kRandomMethod = "random";

struct SeedComparison {
  uint64_t seed = 0;
  double evolution_top10 = 0.0;
  double random_top10 = 0.0;
  std::optional<int64_t> evolution_to_target;
  std::optional<int64_t> random_to_target;
};

// Paired runs of the evolutionary search and random sampling at the same
// unique-evaluation budget, one pair per seed.
struct Comparison {
  uint64_t budget = 0;
  std::vector<SeedComparison> seeds;
  // Top-1% fitness of the enumerated landscape, when the space is small
  // enough to enumerate.
  std::optional<double> target;
  std::string progression_csv;  // evaluations,method,top10_mean,seed
  std::string summary_csv;

  int EvolutionWins() const;  // seeds where evolution >= random
  // Median over seeds of evaluations needed to reach `target`; a seed that
  // never reaches it counts as budget + 1.
  double MedianEvolutionToTarget() const;
  double MedianRandomToTarget() const;
};

Comparison RunComparison(const SearchConfig& base, uint64_t budget,
                         const std::vector<uint64_t>& seeds, int threads = 1);

struct CommandIo {
  std::ostream& out;
  std::ostream& err;
  int threads = 1;
};

// Exit status: 0 success, 1 runtime failure, 2 bad configuration.
int CmdSearch(const std::string& config_path, const std::string& out_dir,
              const CommandIo& io);
int CmdCompare(const std::string& config_path, uint64_t budget,
               const std::vector<uint64_t>& seeds, const std::string& out_dir,
               const CommandIo& io);
int CmdEnumerate(int layers, uint64_t evaluator_seed,
                 const std::string& out_path, uint64_t cap,
                 const CommandIo& io);
// `config_path` may be empty (defaults); it selects the space and evaluator.
int CmdRandom(const std::string& config_path, uint64_t budget, uint64_t seed,
              const std::string& out_dir, const CommandIo& io);

}  // namespace gnas

#endif  // GNAS_COMMANDS_H_

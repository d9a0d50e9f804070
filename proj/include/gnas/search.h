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

// Sharing-based parallel evolutionary search.
//
//   1. N workers each sample M random architectures; all are evaluated and
//      the top n form the sharing population.
//   2. Every epoch, from a snapshot of the sharing population: entropy
//      vector H, mutation probabilities P = softmax(H), admission threshold
//      F = mean fitness of the top n.
//   3. Worker w roulette-selects k parents and mutates m_w positions of each,
//      drawing positions from P.
//   4. All N*k children are evaluated; at the barrier, children fitter than
//      F join the sharing population in (worker, child) order.
//
// Worker w draws only from its own stream, seeded Mix64(seed + 0x100 + w),
// and merges happen in a fixed order, so a run is fully determined by its
// config whatever the number of threads.

#ifndef GNAS_SEARCH_H_
#define GNAS_SEARCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gnas/entropy.h"
#include "gnas/evaluation.h"
#include "gnas/evolution.h"
#include "gnas/fitness_record.h"
#include "gnas/random.h"
#include "gnas/search_space.h"

namespace gnas {

struct SearchConfig {
  uint64_t seed = 0;
  int workers = 4;
  int layers = 2;
  int init_per_worker = 100;
  int sharing_top_n = 20;
  int parents_k = 20;
  std::vector<int> mutations_per_worker = {1, 2, 3, 4};
  int epochs = 20;
  EvaluatorConfig evaluator;
  std::optional<uint64_t> budget_cap;
};

// Throws std::invalid_argument naming the offending field.
void ValidateConfig(const SearchConfig& config);

// Execution knobs that never change results.
struct RunOptions {
  int threads = 1;
  // Ignore config.epochs and keep going until budget_cap is reached. Stops
  // anyway after `stall_epochs` consecutive epochs without a new evaluation.
  bool until_budget = false;
  int stall_epochs = 50;
};

struct EvaluationLogEntry {
  int64_t index = 0;  // 1-based position in the unique-evaluation sequence
  int epoch = 0;
  int worker = 0;
  std::string architecture;
  double fitness = 0.0;
};

struct EpochReport {
  int epoch = 0;  // 0 is initialization
  int64_t evaluations = 0;
  double best = 0.0;
  double top10_mean = 0.0;
  double threshold = 0.0;
  EntropyVector entropy;
  MutationProbabilities probabilities;
  AdmissionReport admission;
  int requests = 0;    // architectures sent for evaluation this epoch
  int cache_hits = 0;  // of those, already evaluated earlier
  int failures = 0;
};

struct SearchHistory {
  SearchConfig config;
  std::vector<EpochReport> epochs;
  std::vector<EvaluationLogEntry> log;
  std::optional<FitnessRecord> best;
  int failures = 0;
  std::vector<std::string> warnings;
};

// Running best and mean of the ten best fitnesses (of all, when fewer).
class Top10Tracker {
 public:
  void Add(double fitness);
  double best() const { return best_; }
  double mean() const;
  int64_t count() const { return count_; }

 private:
  std::vector<double> heap_;  // min-heap of the kept values
  double best_ = 0.0;
  int64_t count_ = 0;
};

class SearchEngine {
 public:
  // `space`, `backend` and `cache` must outlive the engine.
  SearchEngine(SearchConfig config, const SearchSpace& space,
               FitnessBackend& backend, FitnessCache& cache,
               RunOptions options = {});

  // Throws std::runtime_error if no initial architecture could be evaluated.
  const EpochReport& Initialize();
  const EpochReport& RunEpoch();

  bool BudgetExhausted() const;
  int64_t unique_evaluations() const { return tracker_.count(); }
  const SharingPopulation& population() const { return population_; }
  const SearchHistory& history() const { return history_; }
  SearchHistory TakeHistory() { return std::move(history_); }

 private:
  // Longest prefix of `candidates` whose new architectures fit the budget.
  size_t BudgetPrefix(const std::vector<Architecture>& candidates) const;
  std::vector<EvaluationResult> Evaluate(
      const std::vector<Architecture>& candidates,
      const std::vector<int>& workers);
  EpochReport& Report(int epoch, const std::vector<FitnessRecord>& snapshot);

  SearchConfig config_;
  const SearchSpace& space_;
  FitnessBackend& backend_;
  FitnessCache& cache_;
  RunOptions options_;
  std::vector<RandomStream> streams_;
  SharingPopulation population_;
  SearchHistory history_;
  Top10Tracker tracker_;
  int epoch_ = 0;
};

struct SearchResult {
  FitnessRecord best;
  SearchHistory history;
};

// Initialization then epochs, stopping early at budget_cap. A fresh cache is
// used unless one is supplied.
SearchResult RunSearch(const SearchConfig& config, const SearchSpace& space,
                       FitnessBackend& backend, RunOptions options = {},
                       FitnessCache* cache = nullptr);

// Uniform sampling of distinct architectures until `budget` of them are
// evaluated or the space runs out. Stream seeded Mix64(seed + 0x200).
SearchHistory RunRandomBaseline(uint64_t budget, const SearchSpace& space,
                                FitnessBackend& backend, uint64_t seed,
                                FitnessCache* cache = nullptr);

// (evaluations so far, mean of the ten best fitnesses so far) per log entry.
// Throws std::invalid_argument on an empty log.
std::vector<std::pair<int64_t, double>> Top10Progression(
    const std::vector<EvaluationLogEntry>& log);

}  // namespace gnas

#endif  // GNAS_SEARCH_H_

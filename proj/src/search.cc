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

#include "gnas/search.h"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace gnas {
namespace {

constexpr uint64_t kWorkerStreamOffset = 0x100;
constexpr uint64_t kRandomStreamOffset = 0x200;
constexpr size_t kTopK = 10;
constexpr size_t kRandomBatch = 64;

// Runs fn(0..count-1), spread over up to `threads` threads.
void ForEachWorker(int count, int threads,
                   const std::function<void(int)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (int w = 0; w < count; ++w) fn(w);
    return;
  }
  const int used = std::min(threads, count);
  std::vector<std::jthread> pool;
  for (int t = 0; t < used; ++t) {
    pool.emplace_back([&, t] {
      for (int w = t; w < count; w += used) fn(w);
    });
  }
}

FitnessRecord ToRecord(const EvaluationResult& r, Origin origin, int worker,
                       int epoch) {
  FitnessRecord record;
  record.arch = r.arch;
  record.key = r.key;
  record.fitness = r.fitness;
  record.origin = origin;
  record.worker = worker;
  record.epoch = epoch;
  return record;
}

int CountCached(const std::vector<EvaluationResult>& results) {
  return static_cast<int>(std::count_if(
      results.begin(), results.end(),
      [](const EvaluationResult& r) { return r.ok() && r.cached; }));
}

}  // namespace

void ValidateConfig(const SearchConfig& c) {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
  };
  require(c.workers >= 1, "workers must be >= 1");
  require(c.layers >= 1, "layers must be >= 1");
  require(c.init_per_worker >= 1, "init_per_worker must be >= 1");
  require(c.sharing_top_n >= 1, "sharing_top_n must be >= 1");
  require(c.parents_k >= 1, "parents_k must be >= 1");
  require(c.epochs >= 0, "epochs must be >= 0");
  require(static_cast<int>(c.mutations_per_worker.size()) == c.workers,
          "mutations_per_worker has " +
              std::to_string(c.mutations_per_worker.size()) +
              " entries but workers is " + std::to_string(c.workers));
  for (int m : c.mutations_per_worker) {
    require(m >= 1 && m <= kComponentsPerLayer * c.layers,
            "mutations_per_worker entry " + std::to_string(m) +
                " outside [1, " + std::to_string(kComponentsPerLayer * c.layers) +
                "]");
  }
  require(!c.budget_cap || *c.budget_cap >= 1, "budget_cap must be >= 1");
  switch (c.evaluator.kind) {
    case EvaluatorConfig::Kind::kSynthetic:
      break;
    case EvaluatorConfig::Kind::kTabular:
      require(!c.evaluator.tabular_path.empty(), "evaluator.path is required");
      break;
    case EvaluatorConfig::Kind::kExternal:
      require(!c.evaluator.command.empty(), "evaluator.command is required");
      require(c.evaluator.timeout_seconds > 0,
              "evaluator.timeout_seconds must be positive");
      require(c.evaluator.max_in_flight >= 1,
              "evaluator.max_in_flight must be >= 1");
      break;
  }
}

void Top10Tracker::Add(double fitness) {
  best_ = count_ == 0 ? fitness : std::max(best_, fitness);
  ++count_;
  const auto greater = std::greater<double>();
  if (heap_.size() < kTopK) {
    heap_.push_back(fitness);
    std::push_heap(heap_.begin(), heap_.end(), greater);
  } else if (fitness > heap_.front()) {
    std::pop_heap(heap_.begin(), heap_.end(), greater);
    heap_.back() = fitness;
    std::push_heap(heap_.begin(), heap_.end(), greater);
  }
}

double Top10Tracker::mean() const {
  if (heap_.empty()) return 0.0;
  // Summed fresh so the value does not depend on the insertion history.
  std::vector<double> kept = heap_;
  std::sort(kept.begin(), kept.end());
  double sum = 0.0;
  for (double v : kept) sum += v;
  return sum / static_cast<double>(kept.size());
}

SearchEngine::SearchEngine(SearchConfig config, const SearchSpace& space,
                           FitnessBackend& backend, FitnessCache& cache,
                           RunOptions options)
    : config_(std::move(config)),
      space_(space),
      backend_(backend),
      cache_(cache),
      options_(options),
      population_(std::max(config_.sharing_top_n, 1)) {
  ValidateConfig(config_);
  if (config_.layers != space_.layers()) {
    throw std::invalid_argument("config layers does not match the space");
  }
  for (int w = 0; w < config_.workers; ++w) {
    streams_.emplace_back(
        Mix64(config_.seed + kWorkerStreamOffset + static_cast<uint64_t>(w)));
  }
  history_.config = config_;
}

bool SearchEngine::BudgetExhausted() const {
  return config_.budget_cap &&
         static_cast<uint64_t>(tracker_.count()) >= *config_.budget_cap;
}

size_t SearchEngine::BudgetPrefix(
    const std::vector<Architecture>& candidates) const {
  if (!config_.budget_cap) return candidates.size();
  const uint64_t used = static_cast<uint64_t>(tracker_.count());
  if (used >= *config_.budget_cap) return 0;
  uint64_t remaining = *config_.budget_cap - used;
  std::unordered_set<std::string> fresh;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const std::string key = EncodeArchitecture(space_, candidates[i]);
    if (cache_.Find(key) || fresh.contains(key)) continue;
    if (remaining == 0) return i;
    fresh.insert(key);
    --remaining;
  }
  return candidates.size();
}

std::vector<EvaluationResult> SearchEngine::Evaluate(
    const std::vector<Architecture>& candidates,
    const std::vector<int>& workers) {
  auto results = EvaluateBatch(candidates, space_, backend_, cache_);
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (!r.ok()) {
      ++history_.failures;
      continue;
    }
    if (r.cached) continue;
    tracker_.Add(r.fitness);
    history_.log.push_back({tracker_.count(), epoch_, workers[i], r.key,
                            r.fitness});
    if (!history_.best || r.fitness > history_.best->fitness) {
      history_.best = ToRecord(r, epoch_ == 0 ? Origin::kInit : Origin::kChild,
                               workers[i], epoch_);
    }
  }
  return results;
}

EpochReport& SearchEngine::Report(int epoch,
                                  const std::vector<FitnessRecord>& snapshot) {
  EpochReport report;
  report.epoch = epoch;
  report.evaluations = tracker_.count();
  report.best = tracker_.best();
  report.top10_mean = tracker_.mean();
  report.entropy = ComputeEntropy(snapshot, space_);
  report.probabilities = MutationProbabilitiesFromEntropy(report.entropy);
  report.threshold = AdmissionThreshold(snapshot, config_.sharing_top_n);
  history_.epochs.push_back(std::move(report));
  return history_.epochs.back();
}

const EpochReport& SearchEngine::Initialize() {
  if (epoch_ != 0 || !history_.epochs.empty()) {
    throw std::logic_error("SearchEngine::Initialize called twice");
  }
  const int per_worker = config_.init_per_worker;
  std::vector<Architecture> candidates(
      static_cast<size_t>(config_.workers) * per_worker);
  ForEachWorker(config_.workers, options_.threads, [&](int w) {
    for (int j = 0; j < per_worker; ++j) {
      candidates[static_cast<size_t>(w) * per_worker + j] =
          SampleUniform(space_, streams_[w]);
    }
  });
  std::vector<int> workers(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    workers[i] = static_cast<int>(i / per_worker);
  }
  const size_t usable = BudgetPrefix(candidates);
  candidates.resize(usable);
  workers.resize(usable);

  const int failures_before = history_.failures;
  const auto results = Evaluate(candidates, workers);
  std::vector<FitnessRecord> evaluated;
  std::unordered_set<std::string> seen;
  int duplicates = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    if (!results[i].ok()) continue;
    if (!seen.insert(results[i].key).second) {
      ++duplicates;
      continue;
    }
    evaluated.push_back(ToRecord(results[i], Origin::kInit, workers[i], 0));
  }
  if (evaluated.empty()) {
    throw std::runtime_error(
        "initialization failed: no initial architecture could be evaluated");
  }
  for (auto& record : SelectTopN(evaluated, config_.sharing_top_n)) {
    population_.Add(std::move(record));
  }

  EpochReport& report = Report(0, population_.records());
  report.admission.admitted = static_cast<int>(population_.size());
  report.admission.rejected =
      static_cast<int>(evaluated.size() - population_.size());
  report.admission.duplicates = duplicates;
  report.requests = static_cast<int>(results.size());
  report.cache_hits = CountCached(results);
  report.failures = history_.failures - failures_before;
  return report;
}

const EpochReport& SearchEngine::RunEpoch() {
  if (history_.epochs.empty()) {
    throw std::logic_error("SearchEngine::RunEpoch before Initialize");
  }
  ++epoch_;
  const std::vector<FitnessRecord> snapshot = population_.records();
  const EntropyVector entropy = ComputeEntropy(snapshot, space_);
  const MutationProbabilities probabilities =
      MutationProbabilitiesFromEntropy(entropy);
  const double threshold = AdmissionThreshold(snapshot, config_.sharing_top_n);

  const int k = config_.parents_k;
  std::vector<Architecture> candidates(static_cast<size_t>(config_.workers) * k);
  ForEachWorker(config_.workers, options_.threads, [&](int w) {
    auto& rng = streams_[w];
    const auto parents = WheelSelect(snapshot, k, rng);
    for (int j = 0; j < k; ++j) {
      candidates[static_cast<size_t>(w) * k + j] =
          Mutate(parents[j].arch, probabilities,
                 config_.mutations_per_worker[w], space_, rng);
    }
  });
  std::vector<int> workers(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    workers[i] = static_cast<int>(i / k);
  }
  const size_t usable = BudgetPrefix(candidates);
  candidates.resize(usable);
  workers.resize(usable);

  const int failures_before = history_.failures;
  const auto results = Evaluate(candidates, workers);
  std::vector<FitnessRecord> children;
  children.reserve(results.size());
  for (size_t i = 0; i < results.size(); ++i) {
    if (results[i].ok()) {
      children.push_back(
          ToRecord(results[i], Origin::kChild, workers[i], epoch_));
    }
  }
  const AdmissionReport admission =
      MergeChildren(population_, children, threshold);

  EpochReport report;
  report.epoch = epoch_;
  report.evaluations = tracker_.count();
  report.best = tracker_.best();
  report.top10_mean = tracker_.mean();
  report.threshold = threshold;
  report.entropy = entropy;
  report.probabilities = probabilities;
  report.admission = admission;
  report.requests = static_cast<int>(results.size());
  report.cache_hits = CountCached(results);
  report.failures = history_.failures - failures_before;
  history_.epochs.push_back(std::move(report));
  return history_.epochs.back();
}

SearchResult RunSearch(const SearchConfig& config, const SearchSpace& space,
                       FitnessBackend& backend, RunOptions options,
                       FitnessCache* cache) {
  FitnessCache local;
  if (options.until_budget && !config.budget_cap) {
    throw std::invalid_argument("until_budget requires budget_cap");
  }
  SearchEngine engine(config, space, backend, cache ? *cache : local, options);
  engine.Initialize();
  int stalled = 0;
  bool gave_up = false;
  for (int epoch = 1; options.until_budget || epoch <= config.epochs; ++epoch) {
    if (engine.BudgetExhausted()) break;
    const int64_t before = engine.unique_evaluations();
    engine.RunEpoch();
    stalled = engine.unique_evaluations() == before ? stalled + 1 : 0;
    if (options.until_budget && stalled >= options.stall_epochs) {
      gave_up = true;
      break;
    }
  }
  SearchResult result;
  result.history = engine.TakeHistory();
  if (gave_up) {
    result.history.warnings.push_back(
        "stopped after " + std::to_string(options.stall_epochs) +
        " epochs without a new architecture, short of the budget");
  }
  if (!result.history.best) {
    throw std::runtime_error("search finished without a successful evaluation");
  }
  result.best = *result.history.best;
  return result;
}

SearchHistory RunRandomBaseline(uint64_t budget, const SearchSpace& space,
                                FitnessBackend& backend, uint64_t seed,
                                FitnessCache* cache) {
  if (budget < 1) throw std::invalid_argument("random baseline budget < 1");
  FitnessCache local;
  FitnessCache& memo = cache ? *cache : local;
  SearchHistory history;
  history.config.seed = seed;
  history.config.layers = space.layers();
  history.config.budget_cap = budget;

  const BigCount size = SpaceSize(space);
  uint64_t target = budget;
  if (size < budget) {
    target = size.convert_to<uint64_t>();
    history.warnings.push_back("space has only " + size.str() +
                               " architectures; budget " +
                               std::to_string(budget) + " cannot be reached");
  }

  RandomStream rng(Mix64(seed + kRandomStreamOffset));
  Top10Tracker tracker;
  std::unordered_set<std::string> failed;
  while (static_cast<uint64_t>(tracker.count()) < target) {
    const uint64_t exhausted = static_cast<uint64_t>(tracker.count()) +
                               failed.size();
    if (size <= exhausted) {
      history.warnings.push_back("space exhausted after " +
                                 std::to_string(tracker.count()) +
                                 " evaluations");
      break;
    }
    const uint64_t want = std::min<uint64_t>(
        kRandomBatch, target - static_cast<uint64_t>(tracker.count()));
    std::vector<Architecture> batch;
    std::unordered_set<std::string> keys;
    // Bounded so a nearly exhausted space cannot spin forever on one batch.
    for (uint64_t draws = 0; batch.size() < want && draws < 64 * want + 4096;
         ++draws) {
      Architecture arch = SampleUniform(space, rng);
      std::string key = EncodeArchitecture(space, arch);
      if (memo.Find(key) || failed.contains(key) || keys.contains(key)) {
        continue;
      }
      keys.insert(std::move(key));
      batch.push_back(std::move(arch));
    }
    if (batch.empty()) continue;
    for (const auto& r : EvaluateBatch(batch, space, backend, memo)) {
      if (!r.ok()) {
        ++history.failures;
        failed.insert(r.key);
        continue;
      }
      if (r.cached) continue;
      tracker.Add(r.fitness);
      history.log.push_back({tracker.count(), 0, 0, r.key, r.fitness});
      if (!history.best || r.fitness > history.best->fitness) {
        history.best = ToRecord(r, Origin::kInit, 0, 0);
      }
    }
  }
  return history;
}

std::vector<std::pair<int64_t, double>> Top10Progression(
    const std::vector<EvaluationLogEntry>& log) {
  if (log.empty()) throw std::invalid_argument("Top10Progression: empty log");
  std::vector<std::pair<int64_t, double>> progression;
  progression.reserve(log.size());
  Top10Tracker tracker;
  for (const auto& entry : log) {
    tracker.Add(entry.fitness);
    progression.emplace_back(tracker.count(), tracker.mean());
  }
  return progression;
}

}  // namespace gnas

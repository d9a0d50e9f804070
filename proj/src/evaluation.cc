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

#include "gnas/evaluation.h"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <thread>
#include <unordered_set>

#include "gnas/csv.h"
#include "gnas/random.h"

namespace gnas {
namespace {

constexpr double kPairWeight = 0.3;

uint64_t Chain(uint64_t seed, std::initializer_list<uint64_t> fields) {
  uint64_t h = seed;
  for (uint64_t field : fields) h = Mix64(h + field);
  return h;
}

}  // namespace

const char* KindName(EvaluatorConfig::Kind kind) {
  switch (kind) {
    case EvaluatorConfig::Kind::kSynthetic:
      return "synthetic";
    case EvaluatorConfig::Kind::kTabular:
      return "tabular";
    case EvaluatorConfig::Kind::kExternal:
      return "external";
  }
  return "unknown";
}

double SyntheticFitness(const Architecture& arch, uint64_t seed) {
  const auto& g = arch.genes;
  const size_t positions = g.size();
  if (positions == 0) return 0.0;
  double unary = 0.0;
  for (size_t i = 0; i < positions; ++i) {
    unary += UnitInterval(Chain(seed, {1, i, static_cast<uint64_t>(g[i])}));
  }
  double pairwise = 0.0;
  for (size_t i = 0; i + 1 < positions; ++i) {
    pairwise += UnitInterval(Chain(seed, {2, i, static_cast<uint64_t>(g[i]),
                                          static_cast<uint64_t>(g[i + 1])}));
  }
  const double p = static_cast<double>(positions);
  return (unary + kPairWeight * pairwise) / (p + kPairWeight * (p - 1.0));
}

std::vector<BackendOutcome> SyntheticBackend::Evaluate(
    std::span<const Architecture> archs) {
  std::vector<BackendOutcome> out(archs.size());
  const size_t workers =
      std::clamp<size_t>(static_cast<size_t>(std::max(threads_, 1)), 1,
                         std::max<size_t>(archs.size(), 1));
  auto run = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      out[i] = BackendOutcome::Ok(SyntheticFitness(archs[i], seed_));
    }
  };
  if (workers == 1) {
    run(0, archs.size());
    return out;
  }
  {
    std::vector<std::jthread> pool;
    const size_t chunk = (archs.size() + workers - 1) / workers;
    for (size_t begin = 0; begin < archs.size(); begin += chunk) {
      pool.emplace_back(run, begin, std::min(archs.size(), begin + chunk));
    }
  }
  return out;
}

double TabularBackend::Lookup(const std::string& key) const {
  const auto it = table_.find(key);
  if (it == table_.end()) {
    throw MissingEntryError("no tabular entry for architecture '" + key + "'");
  }
  return it->second;
}

std::vector<BackendOutcome> TabularBackend::Evaluate(
    std::span<const Architecture> archs) {
  std::vector<BackendOutcome> out;
  out.reserve(archs.size());
  for (const auto& arch : archs) {
    try {
      out.push_back(BackendOutcome::Ok(Lookup(EncodeArchitecture(space_, arch))));
    } catch (const std::exception& e) {
      out.push_back(BackendOutcome::Fail(e.what()));
    }
  }
  return out;
}

std::unique_ptr<TabularBackend> LoadTabular(const SearchSpace& space,
                                            const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TabularLoadError("cannot open tabular file " + path);
  auto fail = [&](int line_no, const std::string& what) {
    return TabularLoadError(path + ":" + std::to_string(line_no) + ": " + what);
  };

  std::unordered_map<std::string, double> table;
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "architecture,fitness") {
        throw fail(line_no, "expected header 'architecture,fitness'");
      }
      saw_header = true;
      continue;
    }
    const size_t comma = line.rfind(',');
    if (comma == std::string::npos) throw fail(line_no, "missing fitness");
    const std::string key = line.substr(0, comma);
    try {
      DecodeArchitecture(space, key);
    } catch (const ParseError& e) {
      throw fail(line_no, e.what());
    }
    const auto fitness = ParseDouble(std::string_view(line).substr(comma + 1));
    if (!fitness) throw fail(line_no, "unparseable fitness");
    if (!(*fitness >= 0.0 && *fitness <= 1.0)) {
      throw fail(line_no, "fitness " + line.substr(comma + 1) +
                              " outside [0, 1]");
    }
    if (!table.emplace(key, *fitness).second) {
      throw fail(line_no, "duplicate architecture '" + key + "'");
    }
  }
  if (!saw_header) throw fail(line_no, "empty file");
  return std::make_unique<TabularBackend>(space, std::move(table));
}

void WriteTabular(const std::string& path,
                  std::span<const std::pair<std::string, double>> rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "architecture,fitness\n";
  for (const auto& [key, fitness] : rows) {
    out << key << ',' << FormatDouble(fitness) << '\n';
  }
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::unique_ptr<FitnessBackend> MakeBackend(const EvaluatorConfig& config,
                                            const SearchSpace& space,
                                            int threads) {
  switch (config.kind) {
    case EvaluatorConfig::Kind::kSynthetic:
      return std::make_unique<SyntheticBackend>(config.synthetic_seed, threads);
    case EvaluatorConfig::Kind::kTabular:
      return LoadTabular(space, config.tabular_path);
    case EvaluatorConfig::Kind::kExternal:
      return std::make_unique<ExternalBackend>(space, config.command,
                                               config.timeout_seconds,
                                               config.max_in_flight);
  }
  throw std::invalid_argument("unknown evaluator kind");
}

std::optional<double> FitnessCache::Find(const std::string& key) const {
  std::lock_guard lock(mu_);
  const auto it = counted_.find(key);
  if (it == counted_.end()) return std::nullopt;
  return it->second;
}

bool FitnessCache::Insert(const std::string& key, double fitness) {
  std::lock_guard lock(mu_);
  auto [it, inserted] = counted_.try_emplace(key, fitness);
  if (!inserted) it->second = fitness;
  return inserted;
}

void FitnessCache::Preload(const std::string& key, double fitness) {
  std::lock_guard lock(mu_);
  preloaded_[key] = fitness;
}

std::optional<double> FitnessCache::FindPreloaded(const std::string& key) const {
  std::lock_guard lock(mu_);
  const auto it = preloaded_.find(key);
  if (it == preloaded_.end()) return std::nullopt;
  return it->second;
}

size_t FitnessCache::unique_evaluations() const {
  std::lock_guard lock(mu_);
  return counted_.size();
}

std::vector<EvaluationResult> EvaluateBatch(
    std::span<const Architecture> archs, const SearchSpace& space,
    FitnessBackend& backend, FitnessCache& cache) {
  std::vector<EvaluationResult> results(archs.size());
  std::vector<size_t> dispatch;  // first occurrences that need the backend
  std::vector<size_t> repeats;   // later occurrences of a miss in this batch
  std::unordered_set<std::string> pending;

  for (size_t i = 0; i < archs.size(); ++i) {
    auto& r = results[i];
    r.arch = archs[i];
    r.key = EncodeArchitecture(space, archs[i]);
    if (const auto hit = cache.Find(r.key)) {
      r.fitness = *hit;
      r.cached = true;
    } else if (pending.contains(r.key)) {
      repeats.push_back(i);
    } else if (const auto known = cache.FindPreloaded(r.key)) {
      r.fitness = *known;
      cache.Insert(r.key, *known);
    } else {
      pending.insert(r.key);
      dispatch.push_back(i);
    }
  }

  if (!dispatch.empty()) {
    std::vector<Architecture> batch;
    batch.reserve(dispatch.size());
    for (size_t i : dispatch) batch.push_back(archs[i]);
    const auto start = std::chrono::steady_clock::now();
    auto outcomes = backend.Evaluate(batch);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (outcomes.size() != batch.size()) {
      outcomes.assign(batch.size(),
                      BackendOutcome::Fail("backend returned wrong count"));
    }
    for (size_t j = 0; j < dispatch.size(); ++j) {
      auto& r = results[dispatch[j]];
      r.wall_seconds = elapsed / static_cast<double>(dispatch.size());
      const auto& o = outcomes[j];
      if (!o.fitness) {
        r.error = o.error.empty() ? "evaluation failed" : o.error;
      } else if (!(*o.fitness >= 0.0 && *o.fitness <= 1.0)) {
        r.error = "fitness " + FormatDouble(*o.fitness) + " outside [0, 1]";
      } else {
        r.fitness = *o.fitness;
        cache.Insert(r.key, r.fitness);
      }
    }
  }

  for (size_t i : repeats) {
    auto& r = results[i];
    if (const auto hit = cache.Find(r.key)) {
      r.fitness = *hit;
      r.cached = true;
    } else {
      r.error = "evaluation of '" + r.key + "' failed earlier in this batch";
    }
  }
  return results;
}

}  // namespace gnas

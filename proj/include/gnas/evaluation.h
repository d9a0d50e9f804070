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

// Fitness evaluation. A fitness is the validation metric an architecture
// reaches after training, in [0, 1]. Backends:
//
//   SyntheticBackend  deterministic hash landscape for desk-scale studies
//   TabularBackend    exact lookups in an "architecture,fitness" file
//   ExternalBackend   a child process speaking newline-delimited JSON
//
// EvaluateBatch fronts any backend with a FitnessCache whose counter is the
// search budget unit: the number of distinct architectures evaluated.

#ifndef GNAS_EVALUATION_H_
#define GNAS_EVALUATION_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gnas/search_space.h"

namespace gnas {

struct EvaluatorConfig {
  enum class Kind { kSynthetic, kTabular, kExternal };

  Kind kind = Kind::kSynthetic;
  uint64_t synthetic_seed = 7;
  std::string tabular_path;
  std::vector<std::string> command;
  double timeout_seconds = 600.0;
  int max_in_flight = 4;
};

const char* KindName(EvaluatorConfig::Kind kind);

// Result of one backend attempt: a fitness or an error message.
struct BackendOutcome {
  std::optional<double> fitness;
  std::string error;

  static BackendOutcome Ok(double f) { return {f, {}}; }
  static BackendOutcome Fail(std::string message) {
    return {std::nullopt, std::move(message)};
  }
};

class FitnessBackend {
 public:
  virtual ~FitnessBackend() = default;

  // One outcome per input, in input order. Per-architecture failures are
  // reported through the outcome, never thrown.
  virtual std::vector<BackendOutcome> Evaluate(
      std::span<const Architecture> archs) = 0;
};

// Hash landscape over genomes. With P positions and beta = 0.3,
//
//   fitness = (sum_i u_i(g_i) + beta * sum_{i<P-1} b_i(g_i, g_{i+1}))
//             / (P + beta * (P - 1))
//
// where u_i(v) = unit(chain(seed; 1, i, v)) and
// b_i(v, w) = unit(chain(seed; 2, i, v, w)); chain folds h = Mix64(h + x)
// over its fields starting from h = seed, and unit keeps the top 53 bits.
double SyntheticFitness(const Architecture& arch, uint64_t seed);

class SyntheticBackend : public FitnessBackend {
 public:
  explicit SyntheticBackend(uint64_t seed, int threads = 1)
      : seed_(seed), threads_(threads) {}

  std::vector<BackendOutcome> Evaluate(
      std::span<const Architecture> archs) override;

 private:
  uint64_t seed_;
  int threads_;
};

class MissingEntryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TabularLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TabularBackend : public FitnessBackend {
 public:
  TabularBackend(const SearchSpace& space,
                 std::unordered_map<std::string, double> table)
      : space_(space), table_(std::move(table)) {}

  // Throws MissingEntryError.
  double Lookup(const std::string& key) const;
  size_t size() const { return table_.size(); }

  std::vector<BackendOutcome> Evaluate(
      std::span<const Architecture> archs) override;

 private:
  SearchSpace space_;
  std::unordered_map<std::string, double> table_;
};

// Reads an "architecture,fitness" file. The architecture field itself
// contains commas, so the fitness is everything after the last comma.
// Throws TabularLoadError naming the line on malformed input.
std::unique_ptr<TabularBackend> LoadTabular(const SearchSpace& space,
                                            const std::string& path);

// Writes rows in the LoadTabular format, in the given order.
void WriteTabular(const std::string& path,
                  std::span<const std::pair<std::string, double>> rows);

class EvaluatorProcess;

// Client for an external evaluator process:
//
//   -> {"type":"init","layers":L,"components":[{"name":..,"values":[..]},..]}
//   <- {"type":"ready"}
//   -> {"type":"evaluate","id":N,"architecture":"<canonical string>"}
//   <- {"type":"result","id":N,"fitness":F} | {"type":"error","id":N,...}
//   -> {"type":"shutdown"}
//
// Up to max_in_flight requests are pipelined and answers are matched by id,
// so they may arrive in any order. A request unanswered for timeout_seconds
// after it was sent fails with a timeout; a late answer is ignored. A
// non-JSON line or the process exiting fails every in-flight request, and
// the process is started again for the remaining ones.
class ExternalBackend : public FitnessBackend {
 public:
  ExternalBackend(const SearchSpace& space, std::vector<std::string> command,
                  double timeout_seconds, int max_in_flight = 4);
  ~ExternalBackend() override;

  std::vector<BackendOutcome> Evaluate(
      std::span<const Architecture> archs) override;

  // Number of times the child process was (re)started.
  int launches() const { return launches_; }

 private:
  bool EnsureStarted(std::string* error);
  void Stop();

  SearchSpace space_;
  std::vector<std::string> command_;
  std::chrono::duration<double> timeout_;
  int max_in_flight_;
  int64_t next_id_ = 1;
  int launches_ = 0;
  std::unique_ptr<EvaluatorProcess> process_;
};

std::unique_ptr<FitnessBackend> MakeBackend(const EvaluatorConfig& config,
                                            const SearchSpace& space,
                                            int threads = 1);

// Canonical string -> fitness memo with the unique-evaluation counter.
// Preloaded values answer lookups without a backend call but are counted on
// first use, so a run sees the same budget whether or not values were
// available in advance. Safe for concurrent use.
class FitnessCache {
 public:
  std::optional<double> Find(const std::string& key) const;
  // Counts a new key; returns false if it was already present.
  bool Insert(const std::string& key, double fitness);
  void Preload(const std::string& key, double fitness);
  std::optional<double> FindPreloaded(const std::string& key) const;

  size_t unique_evaluations() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, double> counted_;
  std::unordered_map<std::string, double> preloaded_;
};

struct EvaluationResult {
  Architecture arch;
  std::string key;
  double fitness = 0.0;
  bool cached = false;
  double wall_seconds = 0.0;
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

// Cache hits come back with cached = true and leave the counter alone;
// misses go to the backend in one call (first occurrence only, in input
// order), are stored and counted. Failures are not cached or counted.
std::vector<EvaluationResult> EvaluateBatch(
    std::span<const Architecture> archs, const SearchSpace& space,
    FitnessBackend& backend, FitnessCache& cache);

}  // namespace gnas

#endif  // GNAS_EVALUATION_H_

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

#include "gnas/commands.h"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <ostream>

#include "gnas/artifacts.h"
#include "gnas/config.h"
#include "gnas/csv.h"
#include "gnas/landscape.h"

namespace gnas {
namespace {

namespace fs = std::filesystem;

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid]
                           : 0.5 * (values[mid - 1] + values[mid]);
}

double MedianToTarget(const Comparison& c,
                      std::optional<int64_t> SeedComparison::*field) {
  std::vector<double> counts;
  for (const auto& s : c.seeds) {
    const auto& reached = s.*field;
    counts.push_back(reached ? static_cast<double>(*reached)
                             : static_cast<double>(c.budget + 1));
  }
  return Median(std::move(counts));
}

std::string OptionalCount(const std::optional<int64_t>& v) {
  return v ? std::to_string(*v) : "";
}

void AppendProgression(std::string& csv, const SearchHistory& history,
                       const char* method, uint64_t seed) {
  if (history.log.empty()) return;
  for (const auto& [evals, mean] : Top10Progression(history.log)) {
    csv += std::to_string(evals) + ',' + method + ',' + FormatDouble(mean) +
           ',' + std::to_string(seed) + '\n';
  }
}

double FinalTop10(const SearchHistory& history) {
  return history.log.empty() ? 0.0 : Top10Progression(history.log).back().second;
}

// Creates `dir` and writes the manifest; any failure here happens before
// long-running work and before any CSV exists.
void StartRun(const std::string& command, const std::string& config_path,
              const std::string& dir) {
  fs::create_directories(dir);
  RunManifest manifest;
  manifest.command = command;
  manifest.config_path = config_path;
  manifest.output_dir = dir;
  manifest.started_at = UtcTimestamp();
  WriteFileAtomic((fs::path(dir) / "manifest.json").string(),
                  manifest.ToJson().dump(2) + "\n");
}

void PrintWarnings(const SearchHistory& history, std::ostream& err) {
  for (const auto& w : history.warnings) err << "warning: " << w << "\n";
}

}  // namespace

int Comparison::EvolutionWins() const {
  return static_cast<int>(
      std::count_if(seeds.begin(), seeds.end(), [](const SeedComparison& s) {
        return s.evolution_top10 >= s.random_top10;
      }));
}

double Comparison::MedianEvolutionToTarget() const {
  return MedianToTarget(*this, &SeedComparison::evolution_to_target);
}

double Comparison::MedianRandomToTarget() const {
  return MedianToTarget(*this, &SeedComparison::random_to_target);
}

Comparison RunComparison(const SearchConfig& base, uint64_t budget,
                         const std::vector<uint64_t>& seeds, int threads) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("no seeds given");
  const SearchSpace space = DefaultSpace(base.layers);
  auto backend = MakeBackend(base.evaluator, space, threads);

  Comparison comparison;
  comparison.budget = budget;
  if (base.evaluator.kind != EvaluatorConfig::Kind::kExternal &&
      SpaceSize(space) <= kDefaultEnumerationCap) {
    comparison.target =
        EnumerateLandscape(space, *backend).TopFractionThreshold(0.01);
  }

  comparison.progression_csv = "evaluations,method,top10_mean,seed\n";
  RunOptions options;
  options.threads = threads;
  options.until_budget = true;
  for (uint64_t seed : seeds) {
    SearchConfig config = base;
    config.seed = seed;
    config.budget_cap = budget;
    const SearchResult evolution = RunSearch(config, space, *backend, options);
    const SearchHistory random =
        RunRandomBaseline(budget, space, *backend, seed);

    AppendProgression(comparison.progression_csv, evolution.history,
                      kEvolutionMethod, seed);
    AppendProgression(comparison.progression_csv, random, kRandomMethod, seed);

    SeedComparison row;
    row.seed = seed;
    row.evolution_top10 = FinalTop10(evolution.history);
    row.random_top10 = FinalTop10(random);
    if (comparison.target) {
      row.evolution_to_target =
          EvaluationsToReach(evolution.history.log, *comparison.target);
      row.random_to_target = EvaluationsToReach(random.log, *comparison.target);
    }
    comparison.seeds.push_back(row);
  }

  std::string& summary = comparison.summary_csv;
  summary = std::string("seed,") + kEvolutionMethod + "_top10," +
            kRandomMethod + "_top10,winner," + kEvolutionMethod +
            "_evals_to_top1pct," + kRandomMethod + "_evals_to_top1pct\n";
  for (const auto& s : comparison.seeds) {
    const char* winner = s.evolution_top10 >= s.random_top10 ? kEvolutionMethod
                                                             : kRandomMethod;
    summary += std::to_string(s.seed) + ',' + FormatDouble(s.evolution_top10) +
               ',' + FormatDouble(s.random_top10) + ',' + winner + ',' +
               OptionalCount(s.evolution_to_target) + ',' +
               OptionalCount(s.random_to_target) + '\n';
  }
  return comparison;
}

int CmdSearch(const std::string& config_path, const std::string& out_dir,
              const CommandIo& io) {
  SearchConfig config;
  try {
    config = ParseConfigFile(config_path);
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    StartRun("search", config_path, out_dir);
    const SearchSpace space = DefaultSpace(config.layers);
    auto backend = MakeBackend(config.evaluator, space, io.threads);
    RunOptions options;
    options.threads = io.threads;
    const SearchResult result = RunSearch(config, space, *backend, options);
    const fs::path dir(out_dir);
    WriteFileAtomic((dir / "history.csv").string(), HistoryCsv(result.history));
    WriteFileAtomic((dir / "epochs.csv").string(),
                    EpochCsv(result.history, space.num_positions()));
    WriteFileAtomic((dir / "best.json").string(),
                    BestArchitectureJson(result.history).dump(2) + "\n");
    PrintWarnings(result.history, io.err);
    io.out << "best " << result.best.key << " fitness "
           << FormatDouble(result.best.fitness) << " after "
           << result.history.log.size() << " unique evaluations ("
           << result.history.failures << " failed)\n";
    return 0;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return 1;
  }
}

int CmdCompare(const std::string& config_path, uint64_t budget,
               const std::vector<uint64_t>& seeds, const std::string& out_dir,
               const CommandIo& io) {
  SearchConfig config;
  try {
    config = ParseConfigFile(config_path);
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    StartRun("compare", config_path, out_dir);
    const Comparison c = RunComparison(config, budget, seeds, io.threads);
    const fs::path dir(out_dir);
    WriteFileAtomic((dir / "progression.csv").string(), c.progression_csv);
    WriteFileAtomic((dir / "summary.csv").string(), c.summary_csv);

    io.out << std::left << std::setw(12) << "seed" << std::setw(20)
           << kEvolutionMethod << std::setw(20) << kRandomMethod << "winner\n";
    for (const auto& s : c.seeds) {
      io.out << std::setw(12) << s.seed << std::setw(20)
             << FormatDouble(s.evolution_top10) << std::setw(20)
             << FormatDouble(s.random_top10)
             << (s.evolution_top10 >= s.random_top10 ? kEvolutionMethod
                                                     : kRandomMethod)
             << "\n";
    }
    io.out << kEvolutionMethod << " final top-10 mean >= " << kRandomMethod
           << " in " << c.EvolutionWins() << "/" << c.seeds.size()
           << " seeds\n";
    if (c.target) {
      io.out << "median evaluations to top-1% fitness "
             << FormatDouble(*c.target) << ": " << kEvolutionMethod << " "
             << c.MedianEvolutionToTarget() << ", " << kRandomMethod << " "
             << c.MedianRandomToTarget() << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return 1;
  }
}

int CmdEnumerate(int layers, uint64_t evaluator_seed,
                 const std::string& out_path, uint64_t cap,
                 const CommandIo& io) {
  try {
    const SearchSpace space = DefaultSpace(layers);
    SyntheticBackend backend(evaluator_seed, io.threads);
    const Landscape landscape = EnumerateLandscape(space, backend, cap);
    auto rows = landscape.entries;
    std::sort(rows.begin(), rows.end());
    WriteTabular(out_path, rows);

    const auto& [best_key, best_fitness] = landscape.Best();
    io.out << "architectures " << rows.size() << "\n";
    io.out << "argmax " << best_key << " fitness " << FormatDouble(best_fitness)
           << "\n";
    for (double fraction : {0.005, 0.01, 0.05}) {
      io.out << "top " << fraction * 100 << "% threshold "
             << FormatDouble(landscape.TopFractionThreshold(fraction)) << "\n";
    }
    return 0;
  } catch (const SpaceTooLargeError& e) {
    io.err << "refused: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    io.err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return 1;
  }
}

int CmdRandom(const std::string& config_path, uint64_t budget, uint64_t seed,
              const std::string& out_dir, const CommandIo& io) {
  SearchConfig config;
  try {
    if (!config_path.empty()) config = ParseConfigFile(config_path);
    if (budget < 1) throw ConfigError("--budget must be >= 1");
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    StartRun("random", config_path, out_dir);
    const SearchSpace space = DefaultSpace(config.layers);
    auto backend = MakeBackend(config.evaluator, space, io.threads);
    SearchHistory history = RunRandomBaseline(budget, space, *backend, seed);
    history.config = config;
    history.config.seed = seed;
    history.config.budget_cap = budget;
    const fs::path dir(out_dir);
    WriteFileAtomic((dir / "history.csv").string(), HistoryCsv(history));
    WriteFileAtomic((dir / "best.json").string(),
                    BestArchitectureJson(history).dump(2) + "\n");
    PrintWarnings(history, io.err);
    if (history.best) {
      io.out << "best " << history.best->key << " fitness "
             << FormatDouble(history.best->fitness) << " after "
             << history.log.size() << " unique evaluations\n";
    }
    return 0;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gnas

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

#include "gnas/artifacts.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "gnas/config.h"
#include "gnas/csv.h"

namespace gnas {

std::string HistoryCsv(const SearchHistory& history) {
  std::string out =
      "index,epoch,worker,architecture,fitness,cumulative_best,top10_mean\n";
  Top10Tracker tracker;
  for (const auto& e : history.log) {
    tracker.Add(e.fitness);
    out += std::to_string(e.index) + ',' + std::to_string(e.epoch) + ',' +
           std::to_string(e.worker) + ',' + CsvField(e.architecture) + ',' +
           FormatDouble(e.fitness) + ',' + FormatDouble(tracker.best()) + ',' +
           FormatDouble(tracker.mean()) + '\n';
  }
  return out;
}

std::string EpochCsv(const SearchHistory& history, int num_positions) {
  std::string out = "epoch,evals,best,top10_mean,F";
  for (int i = 1; i <= num_positions; ++i) out += ",h_" + std::to_string(i);
  for (int i = 1; i <= num_positions; ++i) out += ",p_" + std::to_string(i);
  out += ",admitted,rejected,duplicates,requests,cache_hits,failures\n";
  for (const auto& r : history.epochs) {
    out += std::to_string(r.epoch) + ',' + std::to_string(r.evaluations) + ',' +
           FormatDouble(r.best) + ',' + FormatDouble(r.top10_mean) + ',' +
           FormatDouble(r.threshold);
    for (double h : r.entropy) out += ',' + FormatDouble(h);
    for (double p : r.probabilities) out += ',' + FormatDouble(p);
    out += ',' + std::to_string(r.admission.admitted) + ',' +
           std::to_string(r.admission.rejected) + ',' +
           std::to_string(r.admission.duplicates) + ',' +
           std::to_string(r.requests) + ',' + std::to_string(r.cache_hits) +
           ',' + std::to_string(r.failures) + '\n';
  }
  return out;
}

nlohmann::json BestArchitectureJson(const SearchHistory& history) {
  nlohmann::json doc;
  if (history.best) {
    doc["architecture"] = history.best->key;
    doc["fitness"] = history.best->fitness;
    doc["worker"] = history.best->worker;
    doc["epoch"] = history.best->epoch;
  } else {
    doc["architecture"] = nullptr;
    doc["fitness"] = nullptr;
  }
  doc["unique_evaluations"] = history.log.size();
  doc["failures"] = history.failures;
  doc["config"] = ConfigToJson(history.config);
  if (!history.warnings.empty()) doc["warnings"] = history.warnings;
  return doc;
}

nlohmann::json RunManifest::ToJson() const {
  return {{"command", command},
          {"config_path", config_path},
          {"output_dir", output_dir},
          {"started_at", started_at},
          {"engine_version", engine_version}};
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

void WriteFileAtomic(const std::string& path, const std::string& content) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out.flush()) {
      std::remove(temp.c_str());
      throw std::runtime_error("write failed: " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::remove(temp.c_str());
    throw std::runtime_error("cannot rename into " + path + ": " + ec.message());
  }
}

}  // namespace gnas

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

// Run output files.
//
//   history.csv  index,epoch,worker,architecture,fitness,cumulative_best,
//                top10_mean  (one row per unique evaluation)
//   epochs.csv   epoch,evals,best,top10_mean,F,h_1..h_P,p_1..p_P,
//                admitted,rejected,duplicates,requests,cache_hits,failures
//   best.json    {"architecture", "fitness", "config"}
//   manifest.json written before any long-running work starts

#ifndef GNAS_ARTIFACTS_H_
#define GNAS_ARTIFACTS_H_

#include <string>

#include <json.hpp>

#include "gnas/search.h"

namespace gnas {

inline constexpr const char* kEngineVersion = "0.1.0";

std::string HistoryCsv(const SearchHistory& history);
std::string EpochCsv(const SearchHistory& history, int num_positions);
nlohmann::json BestArchitectureJson(const SearchHistory& history);

struct RunManifest {
  std::string command;
  std::string config_path;
  std::string output_dir;
  std::string started_at;  // UTC, ISO 8601
  std::string engine_version = kEngineVersion;

  nlohmann::json ToJson() const;
};

std::string UtcTimestamp();

// Writes through a temporary sibling and renames, so readers never see a
// partial file. Throws std::runtime_error.
void WriteFileAtomic(const std::string& path, const std::string& content);

}  // namespace gnas

#endif  // GNAS_ARTIFACTS_H_

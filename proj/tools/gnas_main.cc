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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gnas/commands.h"
#include "gnas/landscape.h"

int main(int argc, char** argv) {
  CLI::App app{"Parallel evolutionary architecture search for GNNs"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads,
                 "Worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);

  std::string config_path, out;
  uint64_t budget = 0, seed = 0, evaluator_seed = 7,
           cap = gnas::kDefaultEnumerationCap;
  int layers = 1;
  std::vector<uint64_t> seeds;

  auto* search = app.add_subcommand("search", "Run the evolutionary search");
  search->add_option("--config", config_path, "JSON config")->required();
  search->add_option("--out", out, "Output directory")->required();

  auto* compare = app.add_subcommand(
      "compare", "Evolutionary search vs random search at equal budget");
  compare->add_option("--config", config_path, "JSON config")->required();
  compare->add_option("--budget", budget, "Unique evaluations per run")
      ->required();
  compare->add_option("--seeds", seeds, "Comma-separated seeds")
      ->required()
      ->delimiter(',');
  compare->add_option("--out", out, "Output directory")->required();

  auto* enumerate = app.add_subcommand(
      "enumerate", "Write the full synthetic landscape of a small space");
  enumerate->add_option("--layers", layers, "GNN layers")->required();
  enumerate->add_option("--evaluator-seed", evaluator_seed,
                        "Synthetic landscape seed");
  enumerate->add_option("--out", out, "Output tabular file")->required();
  enumerate->add_option("--cap", cap, "Largest space to enumerate");

  auto* random = app.add_subcommand("random", "Uniform random search");
  random->add_option("--budget", budget, "Unique evaluations")->required();
  random->add_option("--seed", seed, "Sampling seed")->required();
  random->add_option("--out", out, "Output directory")->required();
  random->add_option("--config", config_path,
                     "JSON config selecting layers and evaluator");

  CLI11_PARSE(app, argc, argv);

  const gnas::CommandIo io{std::cout, std::cerr, threads};
  if (*search) return gnas::CmdSearch(config_path, out, io);
  if (*compare) return gnas::CmdCompare(config_path, budget, seeds, out, io);
  if (*enumerate) {
    return gnas::CmdEnumerate(layers, evaluator_seed, out, cap, io);
  }
  if (*random) return gnas::CmdRandom(config_path, budget, seed, out, io);
  return 2;
}

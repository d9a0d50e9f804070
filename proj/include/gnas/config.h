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

// JSON search configuration. Every key is optional and defaults to the
// standard setting:
//
//   {
//     "seed": 0, "workers": 4, "layers": 2, "init_per_worker": 100,
//     "sharing_top_n": 20, "parents_k": 20,
//     "mutations_per_worker": [1, 2, 3, 4], "epochs": 20,
//     "budget_cap": null,
//     "evaluator": {"kind": "synthetic", "seed": 7}
//   }
//
// Other evaluator forms:
//   {"kind": "tabular", "path": "table.csv"}
//   {"kind": "external", "command": ["python3", "eval.py"],
//    "timeout_seconds": 600, "max_in_flight": 4}

#ifndef GNAS_CONFIG_H_
#define GNAS_CONFIG_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gnas/search.h"

namespace gnas {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ConfigError naming the offending key.
SearchConfig ParseConfigText(std::string_view text);
SearchConfig ParseConfigFile(const std::string& path);

nlohmann::json ConfigToJson(const SearchConfig& config);

}  // namespace gnas

#endif  // GNAS_CONFIG_H_

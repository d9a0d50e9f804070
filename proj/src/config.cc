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

#include "gnas/config.h"

#include <fstream>
#include <set>
#include <sstream>

namespace gnas {
namespace {

using json = nlohmann::json;

void RejectUnknown(const json& object, const std::set<std::string>& allowed,
                   const std::string& prefix) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + prefix + key + "'");
    }
  }
}

int GetInt(const json& object, const std::string& key,
           const std::string& prefix, int fallback) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError("key '" + prefix + key + "' must be an integer");
  }
  const auto value = v.get<int64_t>();
  if (value < std::numeric_limits<int>::min() ||
      value > std::numeric_limits<int>::max()) {
    throw ConfigError("key '" + prefix + key + "' is out of range");
  }
  return static_cast<int>(value);
}

uint64_t GetUnsigned(const json& object, const std::string& key,
                     const std::string& prefix, uint64_t fallback) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError("key '" + prefix + key +
                      "' must be a non-negative integer");
  }
  return v.get<uint64_t>();
}

EvaluatorConfig ParseEvaluator(const json& object) {
  if (!object.is_object()) {
    throw ConfigError("key 'evaluator' must be an object");
  }
  EvaluatorConfig config;
  if (object.contains("kind") && !object.at("kind").is_string()) {
    throw ConfigError("key 'evaluator.kind' must be a string");
  }
  const std::string kind = object.value("kind", std::string("synthetic"));
  const std::string prefix = "evaluator.";
  if (kind == "synthetic") {
    RejectUnknown(object, {"kind", "seed"}, prefix);
    config.kind = EvaluatorConfig::Kind::kSynthetic;
    config.synthetic_seed = GetUnsigned(object, "seed", prefix, 7);
  } else if (kind == "tabular") {
    RejectUnknown(object, {"kind", "path"}, prefix);
    config.kind = EvaluatorConfig::Kind::kTabular;
    if (!object.contains("path") || !object.at("path").is_string()) {
      throw ConfigError("key 'evaluator.path' must be a string");
    }
    config.tabular_path = object.at("path").get<std::string>();
  } else if (kind == "external") {
    RejectUnknown(object, {"kind", "command", "timeout_seconds", "max_in_flight"},
                  prefix);
    config.kind = EvaluatorConfig::Kind::kExternal;
    const json* command =
        object.contains("command") ? &object.at("command") : nullptr;
    if (!command || !command->is_array() || command->empty()) {
      throw ConfigError(
          "key 'evaluator.command' must be a non-empty array of strings");
    }
    for (const auto& arg : *command) {
      if (!arg.is_string()) {
        throw ConfigError("key 'evaluator.command' must hold only strings");
      }
      config.command.push_back(arg.get<std::string>());
    }
    if (object.contains("timeout_seconds")) {
      const json& t = object.at("timeout_seconds");
      if (!t.is_number() || !(t.get<double>() > 0)) {
        throw ConfigError(
            "key 'evaluator.timeout_seconds' must be a positive number");
      }
      config.timeout_seconds = t.get<double>();
    }
    config.max_in_flight = GetInt(object, "max_in_flight", prefix, 4);
  } else {
    throw ConfigError("key 'evaluator.kind' has unknown value '" + kind + "'");
  }
  return config;
}

}  // namespace

SearchConfig ParseConfigText(std::string_view text) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RejectUnknown(doc,
                {"seed", "workers", "layers", "init_per_worker",
                 "sharing_top_n", "parents_k", "mutations_per_worker",
                 "epochs", "budget_cap", "evaluator"},
                "");

  SearchConfig config;
  config.seed = GetUnsigned(doc, "seed", "", config.seed);
  config.workers = GetInt(doc, "workers", "", config.workers);
  config.layers = GetInt(doc, "layers", "", config.layers);
  config.init_per_worker =
      GetInt(doc, "init_per_worker", "", config.init_per_worker);
  config.sharing_top_n = GetInt(doc, "sharing_top_n", "", config.sharing_top_n);
  config.parents_k = GetInt(doc, "parents_k", "", config.parents_k);
  config.epochs = GetInt(doc, "epochs", "", config.epochs);
  if (doc.contains("mutations_per_worker")) {
    const json& m = doc.at("mutations_per_worker");
    if (!m.is_array()) {
      throw ConfigError("key 'mutations_per_worker' must be an array");
    }
    config.mutations_per_worker.clear();
    for (const auto& v : m) {
      if (!v.is_number_integer()) {
        throw ConfigError("key 'mutations_per_worker' must hold integers");
      }
      config.mutations_per_worker.push_back(v.get<int>());
    }
  }
  if (doc.contains("budget_cap") && !doc.at("budget_cap").is_null()) {
    config.budget_cap = GetUnsigned(doc, "budget_cap", "", 0);
  }
  if (doc.contains("evaluator")) {
    config.evaluator = ParseEvaluator(doc.at("evaluator"));
  }

  try {
    ValidateConfig(config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return config;
}

SearchConfig ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

nlohmann::json ConfigToJson(const SearchConfig& config) {
  json evaluator = {{"kind", KindName(config.evaluator.kind)}};
  switch (config.evaluator.kind) {
    case EvaluatorConfig::Kind::kSynthetic:
      evaluator["seed"] = config.evaluator.synthetic_seed;
      break;
    case EvaluatorConfig::Kind::kTabular:
      evaluator["path"] = config.evaluator.tabular_path;
      break;
    case EvaluatorConfig::Kind::kExternal:
      evaluator["command"] = config.evaluator.command;
      evaluator["timeout_seconds"] = config.evaluator.timeout_seconds;
      evaluator["max_in_flight"] = config.evaluator.max_in_flight;
      break;
  }
  return {
      {"seed", config.seed},
      {"workers", config.workers},
      {"layers", config.layers},
      {"init_per_worker", config.init_per_worker},
      {"sharing_top_n", config.sharing_top_n},
      {"parents_k", config.parents_k},
      {"mutations_per_worker", config.mutations_per_worker},
      {"epochs", config.epochs},
      {"budget_cap", config.budget_cap ? json(*config.budget_cap) : json(nullptr)},
      {"evaluator", evaluator},
  };
}

}  // namespace gnas

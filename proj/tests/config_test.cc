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

#include <string>

#include <gtest/gtest.h>

namespace gnas {
namespace {

void ExpectConfigError(const std::string& text, const std::string& needle) {
  try {
    ParseConfigText(text);
    ADD_FAILURE() << "expected ConfigError for " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
        << e.what();
  }
}

TEST(ConfigTest, EmptyObjectGivesDefaults) {
  const SearchConfig c = ParseConfigText("{}");
  EXPECT_EQ(c.seed, 0u);
  EXPECT_EQ(c.workers, 4);
  EXPECT_EQ(c.layers, 2);
  EXPECT_EQ(c.init_per_worker, 100);
  EXPECT_EQ(c.sharing_top_n, 20);
  EXPECT_EQ(c.parents_k, 20);
  EXPECT_EQ(c.mutations_per_worker, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(c.epochs, 20);
  EXPECT_FALSE(c.budget_cap);
  EXPECT_EQ(c.evaluator.kind, EvaluatorConfig::Kind::kSynthetic);
  EXPECT_EQ(c.evaluator.synthetic_seed, 7u);
}

TEST(ConfigTest, OverridesSingleKeys) {
  EXPECT_EQ(ParseConfigText(R"({"epochs": 5})").epochs, 5);
  const SearchConfig c = ParseConfigText(
      R"({"workers": 2, "mutations_per_worker": [1, 3], "budget_cap": 900,
          "seed": 12, "evaluator": {"kind": "synthetic", "seed": 3}})");
  EXPECT_EQ(c.workers, 2);
  EXPECT_EQ(c.mutations_per_worker, (std::vector<int>{1, 3}));
  EXPECT_EQ(*c.budget_cap, 900u);
  EXPECT_EQ(c.seed, 12u);
  EXPECT_EQ(c.evaluator.synthetic_seed, 3u);
  EXPECT_FALSE(ParseConfigText(R"({"budget_cap": null})").budget_cap);
}

TEST(ConfigTest, MutationListMustMatchWorkers) {
  ExpectConfigError(R"({"workers": 2, "mutations_per_worker": [1, 2, 3]})",
                    "mutations_per_worker");
  ExpectConfigError(R"({"mutations_per_worker": [1, 2, 3, 11]})",
                    "mutations_per_worker");
  ExpectConfigError(R"({"mutations_per_worker": [0, 2, 3, 4]})",
                    "mutations_per_worker");
}

TEST(ConfigTest, RejectsUnknownKeysAndBadTypes) {
  ExpectConfigError(R"({"epoch": 5})", "unknown key 'epoch'");
  ExpectConfigError(R"({"epochs": "5"})", "'epochs' must be an integer");
  ExpectConfigError(R"({"epochs": 2.5})", "'epochs' must be an integer");
  ExpectConfigError(R"({"seed": -1})", "'seed'");
  ExpectConfigError(R"({"mutations_per_worker": 3})", "must be an array");
  ExpectConfigError(R"({"workers": 0})", "invalid config");
  ExpectConfigError(R"({"layers": 0})", "invalid config");
  ExpectConfigError("[1, 2]", "JSON object");
  ExpectConfigError("{", "not valid JSON");
}

TEST(ConfigTest, ParsesEachEvaluatorKind) {
  const SearchConfig tab = ParseConfigText(
      R"({"evaluator": {"kind": "tabular", "path": "scores.csv"}})");
  EXPECT_EQ(tab.evaluator.kind, EvaluatorConfig::Kind::kTabular);
  EXPECT_EQ(tab.evaluator.tabular_path, "scores.csv");

  const SearchConfig ext = ParseConfigText(
      R"({"evaluator": {"kind": "external", "command": ["python3", "-m", "x"],
                        "timeout_seconds": 1.5, "max_in_flight": 2}})");
  EXPECT_EQ(ext.evaluator.kind, EvaluatorConfig::Kind::kExternal);
  EXPECT_EQ(ext.evaluator.command,
            (std::vector<std::string>{"python3", "-m", "x"}));
  EXPECT_EQ(ext.evaluator.timeout_seconds, 1.5);
  EXPECT_EQ(ext.evaluator.max_in_flight, 2);

  const SearchConfig ext_default = ParseConfigText(
      R"({"evaluator": {"kind": "external", "command": ["eval"]}})");
  EXPECT_EQ(ext_default.evaluator.timeout_seconds, 600.0);
}

TEST(ConfigTest, RejectsBadEvaluators) {
  ExpectConfigError(R"({"evaluator": {"kind": "oracle"}})", "unknown value");
  ExpectConfigError(R"({"evaluator": {"kind": 3}})", "must be a string");
  ExpectConfigError(R"({"evaluator": {"kind": "tabular"}})", "evaluator.path");
  ExpectConfigError(R"({"evaluator": {"kind": "synthetic", "path": "x"}})",
                    "unknown key 'evaluator.path'");
  ExpectConfigError(R"({"evaluator": {"kind": "external", "command": []}})",
                    "evaluator.command");
  ExpectConfigError(
      R"({"evaluator": {"kind": "external", "command": ["a"],
                        "timeout_seconds": 0}})",
      "timeout_seconds");
  ExpectConfigError(R"({"evaluator": "synthetic"})", "must be an object");
}

TEST(ConfigTest, JsonRoundTrip) {
  const SearchConfig c = ParseConfigText(
      R"({"workers": 3, "mutations_per_worker": [2, 2, 5], "budget_cap": 77,
          "evaluator": {"kind": "external", "command": ["a", "b"]}})");
  const SearchConfig again = ParseConfigText(ConfigToJson(c).dump());
  EXPECT_EQ(ConfigToJson(again), ConfigToJson(c));
  EXPECT_EQ(again.mutations_per_worker, c.mutations_per_worker);
  EXPECT_EQ(again.evaluator.command, c.evaluator.command);
}

TEST(ConfigTest, MissingFileIsAConfigError) {
  EXPECT_THROW(ParseConfigFile("/nonexistent/config.json"), ConfigError);
}

}  // namespace
}  // namespace gnas

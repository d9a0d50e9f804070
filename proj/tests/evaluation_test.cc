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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "gnas/landscape.h"
#include "test_oracles.h"

namespace gnas {
namespace {

namespace fs = std::filesystem;

std::string TempPath(const std::string& name) {
  return (fs::temp_directory_path() /
          (name + "." + std::to_string(::getpid()) + ".csv"))
      .string();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

// Fails on genomes whose first gene is odd.
class OddFailingBackend : public FitnessBackend {
 public:
  std::vector<BackendOutcome> Evaluate(
      std::span<const Architecture> archs) override {
    ++calls;
    std::vector<BackendOutcome> out;
    for (const auto& a : archs) {
      ++evaluated;
      out.push_back(a.genes[0] % 2 ? BackendOutcome::Fail("odd")
                                   : BackendOutcome::Ok(0.25 + a.genes[1] * 0.1));
    }
    return out;
  }
  int calls = 0;
  int evaluated = 0;
};

TEST(SyntheticFitnessTest, GoldenValues) {
  // Frozen from an independent reference of the hash chain.
  EXPECT_EQ(SyntheticFitness(Architecture{std::vector<int>(5, 0)}, 7),
            0.6147849012136183);
  EXPECT_EQ(SyntheticFitness(Architecture{{0, 2, 0, 2, 3, 1, 0, 7, 1, 1}}, 7),
            0.5895172055854788);
}

TEST(SyntheticFitnessTest, MatchesReferenceImplementation) {
  RandomStream rng(17);
  for (int layers = 1; layers <= 3; ++layers) {
    const SearchSpace space = DefaultSpace(layers);
    for (int i = 0; i < 300; ++i) {
      const Architecture arch = SampleUniform(space, rng);
      const uint64_t seed = rng.Next();
      EXPECT_EQ(SyntheticFitness(arch, seed),
                testing_oracles::SyntheticOracle(arch.genes, seed));
    }
  }
}

TEST(SyntheticFitnessTest, DeterministicAndInUnitInterval) {
  const SearchSpace space = DefaultSpace(2);
  RandomStream rng(18);
  for (int i = 0; i < 1000; ++i) {
    const Architecture arch = SampleUniform(space, rng);
    const double f = SyntheticFitness(arch, 7);
    EXPECT_EQ(f, SyntheticFitness(arch, 7));
    EXPECT_GE(f, 0.0);
    EXPECT_LT(f, 1.0);
  }
}

TEST(SyntheticFitnessTest, OneLayerLandscapeIsNondegenerate) {
  const SearchSpace space = DefaultSpace(1);
  SyntheticBackend backend(7);
  const Landscape landscape = EnumerateLandscape(space, backend);
  ASSERT_EQ(landscape.descending.size(), 5880u);
  EXPECT_GT(landscape.descending[0], landscape.descending[1]);
  double mean = 0.0;
  for (double f : landscape.descending) mean += f;
  mean /= 5880.0;
  double var = 0.0;
  for (double f : landscape.descending) var += (f - mean) * (f - mean);
  EXPECT_GT(std::sqrt(var / 5880.0), 0.01);
  EXPECT_EQ(landscape.Best().second, 0.7788699281523839);
  EXPECT_EQ(landscape.TopFractionThreshold(0.005), 0.726075599078227);
  EXPECT_EQ(landscape.TopFractionThreshold(0.01), 0.7114778781199896);
}

TEST(SyntheticBackendTest, ThreadCountDoesNotChangeResults) {
  const SearchSpace space = DefaultSpace(2);
  RandomStream rng(19);
  std::vector<Architecture> archs;
  for (int i = 0; i < 257; ++i) archs.push_back(SampleUniform(space, rng));
  SyntheticBackend one(7, 1), many(7, 5);
  const auto a = one.Evaluate(archs);
  const auto b = many.Evaluate(archs);
  for (size_t i = 0; i < archs.size(); ++i) EXPECT_EQ(*a[i].fitness, *b[i].fitness);
}

TEST(EvaluateBatchTest, CachesAndCountsDistinctArchitectures) {
  const SearchSpace space = DefaultSpace(1);
  SyntheticBackend backend(7);
  FitnessCache cache;
  const Architecture a{{0, 0, 0, 0, 0}}, b{{1, 0, 0, 0, 0}};
  auto first = EvaluateBatch(std::vector<Architecture>{a, b, a}, space, backend,
                             cache);
  EXPECT_EQ(cache.unique_evaluations(), 2u);
  EXPECT_FALSE(first[0].cached);
  EXPECT_FALSE(first[1].cached);
  EXPECT_TRUE(first[2].cached);
  EXPECT_EQ(first[2].fitness, first[0].fitness);

  auto second = EvaluateBatch(std::vector<Architecture>{a}, space, backend, cache);
  EXPECT_TRUE(second[0].cached);
  EXPECT_EQ(cache.unique_evaluations(), 2u);
}

TEST(EvaluateBatchTest, PreservesOrderAndIsolatesFailures) {
  const SearchSpace space = DefaultSpace(1);
  OddFailingBackend backend;
  FitnessCache cache;
  std::vector<Architecture> archs;
  for (int g = 0; g < 6; ++g) archs.push_back(Architecture{{g, g % 3, 0, 0, 0}});
  const auto results = EvaluateBatch(archs, space, backend, cache);
  ASSERT_EQ(results.size(), 6u);
  for (int g = 0; g < 6; ++g) {
    EXPECT_EQ(results[g].arch, archs[g]);
    EXPECT_EQ(results[g].ok(), g % 2 == 0) << g;
    if (results[g].ok()) EXPECT_NEAR(results[g].fitness, 0.25 + (g % 3) * 0.1, 1e-15);
  }
  EXPECT_EQ(cache.unique_evaluations(), 3u);
  EXPECT_EQ(backend.calls, 1);
}

TEST(EvaluateBatchTest, OutOfRangeBackendFitnessIsAnError) {
  class Bad : public FitnessBackend {
    std::vector<BackendOutcome> Evaluate(
        std::span<const Architecture> archs) override {
      return std::vector<BackendOutcome>(archs.size(), BackendOutcome::Ok(1.5));
    }
  } backend;
  FitnessCache cache;
  const auto r = EvaluateBatch(std::vector<Architecture>{Architecture{{0, 0, 0, 0, 0}}},
                               DefaultSpace(1), backend, cache);
  EXPECT_FALSE(r[0].ok());
  EXPECT_EQ(cache.unique_evaluations(), 0u);
}

TEST(EvaluateBatchTest, PreloadedValuesSkipTheBackendButCount) {
  const SearchSpace space = DefaultSpace(1);
  OddFailingBackend backend;
  FitnessCache cache;
  const Architecture a{{0, 0, 0, 0, 0}};
  cache.Preload(EncodeArchitecture(space, a), 0.42);
  const auto r = EvaluateBatch(std::vector<Architecture>{a}, space, backend, cache);
  EXPECT_EQ(r[0].fitness, 0.42);
  EXPECT_FALSE(r[0].cached);
  EXPECT_EQ(backend.evaluated, 0);
  EXPECT_EQ(cache.unique_evaluations(), 1u);
}

TEST(TabularTest, LooksUpExactArchitectures) {
  const SearchSpace space = DefaultSpace(2);
  const std::string path = TempPath("tabular_ok");
  WriteText(path,
            "architecture,fitness\n"
            "gat,sum,tanh,4,64;gcn,mean,elu,2,16,0.81\n"
            "gcn,sum,tanh,4,64;gcn,mean,elu,2,16,0.5\r\n");
  const auto backend = LoadTabular(space, path);
  EXPECT_EQ(backend->size(), 2u);
  EXPECT_EQ(backend->Lookup("gat,sum,tanh,4,64;gcn,mean,elu,2,16"), 0.81);
  EXPECT_THROW(backend->Lookup("cos,sum,tanh,4,64;gcn,mean,elu,2,16"),
               MissingEntryError);

  const auto outcomes = backend->Evaluate(std::vector<Architecture>{
      DecodeArchitecture(space, "gat,sum,tanh,4,64;gcn,mean,elu,2,16"),
      DecodeArchitecture(space, "cos,sum,tanh,4,64;gcn,mean,elu,2,16")});
  EXPECT_EQ(*outcomes[0].fitness, 0.81);
  EXPECT_FALSE(outcomes[1].fitness);
  EXPECT_NE(outcomes[1].error.find("no tabular entry"), std::string::npos);
  std::remove(path.c_str());
}

TEST(TabularTest, MalformedRowsReportTheLine) {
  const SearchSpace space = DefaultSpace(1);
  const std::string path = TempPath("tabular_bad");
  auto expect_error = [&](const std::string& text, const std::string& needle) {
    WriteText(path, text);
    try {
      LoadTabular(space, path);
      ADD_FAILURE() << "expected TabularLoadError for: " << text;
    } catch (const TabularLoadError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
          << e.what();
    }
  };
  expect_error("architecture,fitness\ngat,sum,tanh,4,64,1.2\n", ":2:");
  expect_error("architecture,fitness\ngat,sum,tanh,4,64,0.5\ngat,sum,x,4,64,0.5\n",
               ":3:");
  expect_error("architecture,fitness\ngat,sum,tanh,4,64,abc\n", "unparseable");
  expect_error("arch,fit\n", "header");
  expect_error("architecture,fitness\ngat,sum,tanh,4,64,0.1\ngat,sum,tanh,4,64,0.2\n",
               "duplicate");
  EXPECT_THROW(LoadTabular(space, path + ".missing"), TabularLoadError);
  std::remove(path.c_str());
}

TEST(TabularTest, WrittenLandscapeLoadsBack) {
  const SearchSpace space = DefaultSpace(1);
  SyntheticBackend synthetic(7);
  const Landscape landscape = EnumerateLandscape(space, synthetic);
  const std::string path = TempPath("tabular_roundtrip");
  WriteTabular(path, landscape.entries);
  const auto table = LoadTabular(space, path);
  ASSERT_EQ(table->size(), 5880u);
  for (const auto& [key, fitness] : landscape.entries) {
    EXPECT_EQ(table->Lookup(key), fitness);
  }
  std::remove(path.c_str());
}

TEST(MakeBackendTest, BuildsEachKind) {
  const SearchSpace space = DefaultSpace(1);
  EvaluatorConfig config;
  EXPECT_NE(dynamic_cast<SyntheticBackend*>(MakeBackend(config, space).get()),
            nullptr);
  config.kind = EvaluatorConfig::Kind::kTabular;
  config.tabular_path = TempPath("does_not_exist");
  EXPECT_THROW(MakeBackend(config, space), TabularLoadError);
}

}  // namespace
}  // namespace gnas

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

// Drives ExternalBackend against the scriptable stub evaluator.

#include <chrono>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gnas/evaluation.h"

namespace gnas {
namespace {

std::vector<std::string> Stub(std::vector<std::string> flags = {}) {
  flags.insert(flags.begin(), GNAS_STUB_EVALUATOR);
  return flags;
}

std::vector<Architecture> Sample(const SearchSpace& space, int n,
                                 uint64_t seed = 1) {
  RandomStream rng(seed);
  std::vector<Architecture> out;
  for (int i = 0; i < n; ++i) out.push_back(SampleUniform(space, rng));
  return out;
}

bool Contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(ExternalBackendTest, ReturnsConstantFitness) {
  const SearchSpace space = DefaultSpace(2);
  ExternalBackend backend(space, Stub({"--fitness", "0.5"}), 5.0);
  const auto outcomes = backend.Evaluate(Sample(space, 3));
  ASSERT_EQ(outcomes.size(), 3u);
  for (const auto& o : outcomes) {
    ASSERT_TRUE(o.fitness) << o.error;
    EXPECT_EQ(*o.fitness, 0.5);
  }
}

TEST(ExternalBackendTest, SeesTheArchitectureItWasSent) {
  // The stub decodes the architecture and answers with the synthetic value,
  // so a correct answer proves the request carried the right string.
  const SearchSpace space = DefaultSpace(2);
  ExternalBackend backend(space, Stub(), 5.0);
  const auto archs = Sample(space, 10);
  const auto outcomes = backend.Evaluate(archs);
  for (size_t i = 0; i < archs.size(); ++i) {
    ASSERT_TRUE(outcomes[i].fitness) << outcomes[i].error;
    EXPECT_EQ(*outcomes[i].fitness, SyntheticFitness(archs[i], 7));
  }
}

TEST(ExternalBackendTest, MatchesOutOfOrderResponsesById) {
  const SearchSpace space = DefaultSpace(1);
  ExternalBackend backend(space, Stub({"--swap"}), 5.0, 4);
  const auto archs = Sample(space, 9);
  const auto outcomes = backend.Evaluate(archs);
  for (size_t i = 0; i < archs.size(); ++i) {
    ASSERT_TRUE(outcomes[i].fitness) << outcomes[i].error;
    EXPECT_EQ(*outcomes[i].fitness, SyntheticFitness(archs[i], 7));
  }
}

TEST(ExternalBackendTest, MalformedLineFailsInFlightAndRestarts) {
  const SearchSpace space = DefaultSpace(1);
  ExternalBackend backend(space, Stub({"--malformed-id", "2"}), 5.0, 1);
  const auto outcomes = backend.Evaluate(Sample(space, 4));
  EXPECT_TRUE(outcomes[0].fitness);
  ASSERT_FALSE(outcomes[1].fitness);
  EXPECT_TRUE(Contains(outcomes[1].error, "malformed line")) << outcomes[1].error;
  EXPECT_TRUE(Contains(outcomes[1].error, "not json")) << outcomes[1].error;
  EXPECT_TRUE(outcomes[2].fitness) << outcomes[2].error;
  EXPECT_TRUE(outcomes[3].fitness) << outcomes[3].error;
  EXPECT_EQ(backend.launches(), 2);
}

TEST(ExternalBackendTest, TimesOutSilentRequests) {
  const SearchSpace space = DefaultSpace(1);
  ExternalBackend backend(space, Stub({"--silent-id", "2"}), 0.5, 4);
  const auto start = std::chrono::steady_clock::now();
  const auto outcomes = backend.Evaluate(Sample(space, 4));
  const double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  ASSERT_FALSE(outcomes[1].fitness);
  EXPECT_TRUE(Contains(outcomes[1].error, "timeout")) << outcomes[1].error;
  EXPECT_TRUE(outcomes[0].fitness);
  EXPECT_TRUE(outcomes[2].fitness);
  EXPECT_TRUE(outcomes[3].fitness);
  EXPECT_LT(elapsed, 3.0);
}

TEST(ExternalBackendTest, ReportsEvaluatorErrors) {
  const SearchSpace space = DefaultSpace(1);
  ExternalBackend backend(space, Stub({"--error-id", "1"}), 5.0);
  const auto outcomes = backend.Evaluate(Sample(space, 2));
  ASSERT_FALSE(outcomes[0].fitness);
  EXPECT_TRUE(Contains(outcomes[0].error, "evaluator error:")) << outcomes[0].error;
  EXPECT_TRUE(outcomes[1].fitness);
  EXPECT_EQ(backend.launches(), 1);
}

TEST(ExternalBackendTest, RestartsAfterProcessExit) {
  const SearchSpace space = DefaultSpace(1);
  ExternalBackend backend(space, Stub({"--exit-id", "2"}), 5.0, 1);
  const auto outcomes = backend.Evaluate(Sample(space, 3));
  EXPECT_TRUE(outcomes[0].fitness);
  ASSERT_FALSE(outcomes[1].fitness);
  EXPECT_TRUE(Contains(outcomes[1].error, "exited")) << outcomes[1].error;
  EXPECT_TRUE(outcomes[2].fitness) << outcomes[2].error;
  EXPECT_EQ(backend.launches(), 2);
}

TEST(ExternalBackendTest, MissingReadyFailsEveryRequest) {
  const SearchSpace space = DefaultSpace(1);
  ExternalBackend backend(space, Stub({"--no-ready"}), 1.0);
  const auto outcomes = backend.Evaluate(Sample(space, 3));
  for (const auto& o : outcomes) {
    EXPECT_FALSE(o.fitness);
    EXPECT_TRUE(Contains(o.error, "ready")) << o.error;
  }
}

TEST(ExternalBackendTest, MissingExecutableFailsEveryRequest) {
  const SearchSpace space = DefaultSpace(1);
  ExternalBackend backend(space, {"/nonexistent/evaluator"}, 1.0);
  for (const auto& o : backend.Evaluate(Sample(space, 2))) {
    EXPECT_FALSE(o.fitness);
    EXPECT_FALSE(o.error.empty());
  }
}

TEST(ExternalBackendTest, ReusesTheProcessAcrossBatches) {
  const SearchSpace space = DefaultSpace(1);
  ExternalBackend backend(space, Stub(), 5.0);
  for (int batch = 0; batch < 5; ++batch) {
    for (const auto& o : backend.Evaluate(Sample(space, 7, batch))) {
      EXPECT_TRUE(o.fitness) << o.error;
    }
  }
  EXPECT_EQ(backend.launches(), 1);
  EXPECT_TRUE(backend.Evaluate(std::vector<Architecture>{}).empty());
}

TEST(ExternalBackendTest, RejectsBadSettings) {
  const SearchSpace space = DefaultSpace(1);
  EXPECT_THROW(ExternalBackend(space, Stub(), 0.0), std::invalid_argument);
  EXPECT_THROW(ExternalBackend(space, Stub(), -1.0), std::invalid_argument);
}

}  // namespace
}  // namespace gnas

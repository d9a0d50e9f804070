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

// GNN architecture search space: per-layer components (attention,
// aggregation, activation, head count, hidden dimension), the integer genome
// encoding of an architecture, and its canonical text form
// "gat,sum,tanh,4,64;gcn,mean,elu,2,16" (fields joined by ',' inside a
// layer, layers joined by ';').

#ifndef GNAS_SEARCH_SPACE_H_
#define GNAS_SEARCH_SPACE_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gnas/random.h"

namespace gnas {

inline constexpr int kComponentsPerLayer = 5;

using BigCount = boost::multiprecision::cpp_int;

// Raised by DecodeArchitecture on malformed canonical strings.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by EnumerateSpace when the space is larger than the caller's cap.
class SpaceTooLargeError : public std::runtime_error {
 public:
  SpaceTooLargeError(BigCount size, uint64_t cap);
  const BigCount& size() const { return size_; }

 private:
  BigCount size_;
};

// One slot of a layer, e.g. "att_1" with values {gat, gcn, ...}. Value order
// is fixed at construction; genes index into it.
class ComponentSpec {
 public:
  ComponentSpec(std::string name, std::vector<std::string> values);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  // Index of `label`, or -1.
  int IndexOf(std::string_view label) const;

 private:
  std::string name_;
  std::vector<std::string> values_;
};

// Fixed-length genome: genes[i] indexes components[i].values.
struct Architecture {
  std::vector<int> genes;

  friend bool operator==(const Architecture&, const Architecture&) = default;
  friend auto operator<=>(const Architecture&, const Architecture&) = default;
};

class SearchSpace {
 public:
  // `components` must hold kComponentsPerLayer entries per layer.
  SearchSpace(int layers, std::vector<ComponentSpec> components);

  int layers() const { return layers_; }
  int num_positions() const { return static_cast<int>(components_.size()); }
  const std::vector<ComponentSpec>& components() const { return components_; }
  const ComponentSpec& component(int position) const {
    return components_.at(position);
  }

  bool Contains(const Architecture& arch) const;

 private:
  int layers_;
  std::vector<ComponentSpec> components_;
};

// The standard GNN space: per layer
//   att  {gat, gcn, cos, const, sym-gat, linear, gene-linear}
//   agg  {mean, max, sum}
//   act  {tanh, sigmoid, relu, linear, softplus, leaky_relu, relu6, elu}
//   head {1, 2, 4, 6, 8}
//   dim  {8, 16, 32, 64, 128, 256, 512}
// Throws std::invalid_argument for layers < 1.
SearchSpace DefaultSpace(int layers);

// Exact product of the domain sizes.
BigCount SpaceSize(const SearchSpace& space);

// Each gene independent and uniform over its domain.
Architecture SampleUniform(const SearchSpace& space, RandomStream& rng);

std::string EncodeArchitecture(const SearchSpace& space,
                               const Architecture& arch);
Architecture DecodeArchitecture(const SearchSpace& space,
                                std::string_view text);

// Calls `visit` on every architecture in lexicographic gene order. Throws
// SpaceTooLargeError without visiting anything if SpaceSize exceeds `cap`.
// Returning false from `visit` stops the walk early.
void EnumerateSpace(const SearchSpace& space, uint64_t cap,
                    const std::function<bool(const Architecture&)>& visit);

}  // namespace gnas

#endif  // GNAS_SEARCH_SPACE_H_

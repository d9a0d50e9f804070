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

#include "gnas/search_space.h"

#include <algorithm>
#include <set>
#include <utility>

namespace gnas {
namespace {

const char* const kComponentNames[kComponentsPerLayer] = {"att", "agg", "act",
                                                          "head", "dim"};

std::vector<std::string> Split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t end = text.find(sep, start);
    if (end == std::string_view::npos) {
      parts.emplace_back(text.substr(start));
      return parts;
    }
    parts.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
}

}  // namespace

SpaceTooLargeError::SpaceTooLargeError(BigCount size, uint64_t cap)
    : std::runtime_error("search space has " + size.str() +
                         " architectures, exceeding the enumeration cap of " +
                         std::to_string(cap)),
      size_(std::move(size)) {}

ComponentSpec::ComponentSpec(std::string name, std::vector<std::string> values)
    : name_(std::move(name)), values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("component " + name_ + " has no values");
  }
  std::set<std::string> seen;
  for (const auto& v : values_) {
    if (v.empty() || v.find_first_of(",;") != std::string::npos) {
      throw std::invalid_argument("component " + name_ +
                                  " has an unencodable label '" + v + "'");
    }
    if (!seen.insert(v).second) {
      throw std::invalid_argument("component " + name_ +
                                  " has duplicate value '" + v + "'");
    }
  }
}

int ComponentSpec::IndexOf(std::string_view label) const {
  const auto it = std::find(values_.begin(), values_.end(), label);
  return it == values_.end() ? -1 : static_cast<int>(it - values_.begin());
}

SearchSpace::SearchSpace(int layers, std::vector<ComponentSpec> components)
    : layers_(layers), components_(std::move(components)) {
  if (layers_ < 1) throw std::invalid_argument("layers must be >= 1");
  if (static_cast<int>(components_.size()) != kComponentsPerLayer * layers_) {
    throw std::invalid_argument("expected " +
                                std::to_string(kComponentsPerLayer * layers_) +
                                " components, got " +
                                std::to_string(components_.size()));
  }
}

bool SearchSpace::Contains(const Architecture& arch) const {
  if (arch.genes.size() != components_.size()) return false;
  for (size_t i = 0; i < components_.size(); ++i) {
    if (arch.genes[i] < 0 || arch.genes[i] >= components_[i].size()) {
      return false;
    }
  }
  return true;
}

SearchSpace DefaultSpace(int layers) {
  if (layers < 1) {
    throw std::invalid_argument("DefaultSpace: layers must be >= 1, got " +
                                std::to_string(layers));
  }
  const std::vector<std::string> domains[kComponentsPerLayer] = {
      {"gat", "gcn", "cos", "const", "sym-gat", "linear", "gene-linear"},
      {"mean", "max", "sum"},
      {"tanh", "sigmoid", "relu", "linear", "softplus", "leaky_relu", "relu6",
       "elu"},
      {"1", "2", "4", "6", "8"},
      {"8", "16", "32", "64", "128", "256", "512"},
  };
  std::vector<ComponentSpec> components;
  components.reserve(kComponentsPerLayer * layers);
  for (int layer = 1; layer <= layers; ++layer) {
    for (int c = 0; c < kComponentsPerLayer; ++c) {
      components.emplace_back(
          std::string(kComponentNames[c]) + "_" + std::to_string(layer),
          domains[c]);
    }
  }
  return SearchSpace(layers, std::move(components));
}

BigCount SpaceSize(const SearchSpace& space) {
  BigCount size = 1;
  for (const auto& c : space.components()) size *= c.size();
  return size;
}

Architecture SampleUniform(const SearchSpace& space, RandomStream& rng) {
  Architecture arch;
  arch.genes.reserve(space.num_positions());
  for (const auto& c : space.components()) {
    arch.genes.push_back(static_cast<int>(rng.UniformBelow(c.size())));
  }
  return arch;
}

std::string EncodeArchitecture(const SearchSpace& space,
                               const Architecture& arch) {
  if (!space.Contains(arch)) {
    throw std::invalid_argument("architecture is not a member of the space");
  }
  std::string out;
  for (int i = 0; i < space.num_positions(); ++i) {
    if (i > 0) out += (i % kComponentsPerLayer == 0) ? ';' : ',';
    out += space.component(i).values()[arch.genes[i]];
  }
  return out;
}

Architecture DecodeArchitecture(const SearchSpace& space,
                                std::string_view text) {
  const auto layers = Split(text, ';');
  if (static_cast<int>(layers.size()) != space.layers()) {
    throw ParseError("expected " + std::to_string(space.layers()) +
                     " layers, got " + std::to_string(layers.size()) +
                     " in '" + std::string(text) + "'");
  }
  Architecture arch;
  arch.genes.reserve(space.num_positions());
  for (size_t layer = 0; layer < layers.size(); ++layer) {
    const auto fields = Split(layers[layer], ',');
    if (fields.size() != kComponentsPerLayer) {
      throw ParseError("layer " + std::to_string(layer + 1) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(kComponentsPerLayer));
    }
    for (int c = 0; c < kComponentsPerLayer; ++c) {
      const int position = static_cast<int>(layer) * kComponentsPerLayer + c;
      const auto& spec = space.component(position);
      const int index = spec.IndexOf(fields[c]);
      if (index < 0) {
        throw ParseError("unknown value '" + fields[c] + "' for component " +
                         spec.name() + " (position " +
                         std::to_string(position) + ")");
      }
      arch.genes.push_back(index);
    }
  }
  return arch;
}

void EnumerateSpace(const SearchSpace& space, uint64_t cap,
                    const std::function<bool(const Architecture&)>& visit) {
  BigCount size = SpaceSize(space);
  if (size > cap) throw SpaceTooLargeError(std::move(size), cap);

  Architecture arch;
  arch.genes.assign(space.num_positions(), 0);
  while (true) {
    if (!visit(arch)) return;
    // Odometer increment, last position fastest.
    int i = space.num_positions() - 1;
    for (; i >= 0; --i) {
      if (++arch.genes[i] < space.component(i).size()) break;
      arch.genes[i] = 0;
    }
    if (i < 0) return;
  }
}

}  // namespace gnas

// Copyright 2026 The vpic Authors
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

#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "vpic/core_model.hpp"

namespace vpic::testing {

inline ProblemInstance make_instance(int m, const std::vector<Vec>& receivers) {
  std::vector<MessageMask> masks;
  for (const Vec& h : receivers) {
    MessageMask mask = 0;
    for (int i : h) mask |= MessageMask{1} << i;
    masks.push_back(mask);
  }
  return ProblemInstance(m, masks);
}

inline ProblemInstance make_instance(const RefInstance& ref) {
  return make_instance(ref.m, ref.receivers);
}

// m = 3, U = {{1},{2},{3}}.
inline ProblemInstance singleton_instance() { return make_instance(3, {{0}, {1}, {2}}); }

// m = 3, U = {{}, {1}, {1,2}, {1,3}}.
inline ProblemInstance chain_instance() {
  return make_instance(3, {{}, {0}, {0, 1}, {0, 2}});
}

inline VertexId vid(std::vector<std::uint32_t> values, std::uint32_t k) {
  return static_cast<VertexId>(
      canonical_index(values, Alphabet(k), static_cast<int>(values.size())));
}

}  // namespace vpic::testing

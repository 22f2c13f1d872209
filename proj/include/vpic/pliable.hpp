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

// Pliable baseline: each receiver decodes one fixed message index for every
// realisation. The optimum is the best covering number over all choices.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vpic/core_model.hpp"
#include "vpic/cover_solver.hpp"
#include "vpic/decodability.hpp"

namespace vpic {

// Fixed 0-based decoded index per receiver, in instance receiver order.
struct ChoiceAssignment {
  std::vector<int> index;
  DecodeChoices masks() const;
  std::string str(const ProblemInstance& inst) const;
  friend bool operator==(const ChoiceAssignment&, const ChoiceAssignment&) = default;
};

// "1:2,2:1,3:1" maps receiver {1} to message 2 and so on. Multi-message
// receivers join indices with '+', the empty receiver is written '-'.
// Receivers left out default to their smallest admissible index.
ChoiceAssignment parse_choice(std::string_view text, const ProblemInstance& inst);

// Throws InputError if some index lies inside its receiver's side info.
void validate_choice(const ChoiceAssignment& choice, const ProblemInstance& inst);

bool pliable_valid_fiber(std::span<const VertexId> members,
                         const ProblemInstance& inst, const Alphabet& k,
                         const ChoiceAssignment& choice);

struct PliableOptions {
  SolveOptions solve;
  std::uint64_t assignment_cap = 1'000'000;
};

struct PliableResult {
  std::uint32_t t = 0;
  double rate = 0;
  ChoiceAssignment choice;
  VPCodebook codebook;
  bool optimal = false;
  std::uint64_t assignments_examined = 0;
};

PliableResult solve_with_choice(const ProblemInstance& inst, const Alphabet& k,
                                const ChoiceAssignment& choice,
                                const PliableOptions& options = {});

// Minimum over choice assignments in lexicographic order (first receiver
// most significant); ties keep the earliest assignment. Stops early once an
// assignment reaches t = k. Throws CapacityError when the assignment space
// exceeds options.assignment_cap.
PliableResult pliable_min_t(const ProblemInstance& inst, const Alphabet& k,
                            const PliableOptions& options = {});

}  // namespace vpic

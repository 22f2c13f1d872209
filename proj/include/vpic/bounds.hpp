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

// Counting lower bounds on the codeword count t, as finite-k checks.

#include <cstdint>
#include <string>
#include <vector>

#include "vpic/core_model.hpp"
#include "vpic/cover_solver.hpp"

namespace vpic {

class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  std::int64_t ceil() const;
  double value() const { return static_cast<double>(num_) / den_; }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

struct BoundReport {
  std::string name;
  bool applicable = false;
  // Largest fiber any VP code can have under this argument.
  std::uint64_t fiber_cap = 0;
  Rational t_lower{1};
  std::int64_t t_lower_ceil() const { return t_lower.ceil(); }
  Json to_json() const;
};

// Every slice fixes one new coordinate: fibers hold at most k^{m-1}
// realisations, so t >= k.
BoundReport generic_bound(const ProblemInstance& inst, const Alphabet& k);

// U = {{1},...,{m}}, m >= 3: fibers hold at most (m+1)k^{m-2} realisations,
// so t >= k^2/(m+1).
BoundReport singleton_bound(const ProblemInstance& inst, const Alphabet& k);

// m = 3 with receivers {j}, {j,a}, {j,b} present: once X_j = a is known the
// codeword fixes a second message and then the third, so a fiber holds at
// most one realisation per value of X_j.
BoundReport chained_decoding_bound(const ProblemInstance& inst,
                                   const Alphabet& k);

std::vector<BoundReport> all_bounds(const ProblemInstance& inst,
                                    const Alphabet& k);

// Largest t_lower_ceil() over the applicable reports.
std::int64_t best_lower_bound(const std::vector<BoundReport>& reports);

// True iff every maximal edge has at most report.fiber_cap members.
// Requires a complete hypergraph.
bool check_fibers_against_bound(const CodingHypergraph& hg,
                                const BoundReport& report);

}  // namespace vpic

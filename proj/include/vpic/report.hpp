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

// Rate sweeps over a range of alphabet sizes, reported as CSV or JSON.

#include <cstdint>
#include <string>
#include <vector>

#include "vpic/bounds.hpp"
#include "vpic/core_model.hpp"
#include "vpic/pliable.hpp"

namespace vpic {

struct SweepRow {
  std::uint32_t k = 0;
  std::string status = "ok";  // or the error that stopped this row
  std::uint32_t t_vp = 0;
  double alpha = 0;
  bool vp_certified = false;
  std::uint32_t t_pliable = 0;
  double beta = 0;
  bool pliable_certified = false;
  std::int64_t bound_t_lower = 0;
  std::vector<std::string> bounds;  // names of applicable bounds
  std::uint64_t max_edge_size = 0;
  double wall_seconds = 0;
};

struct RunReport {
  Json instance;
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  std::uint32_t k_min = 2;
  std::uint32_t k_max = 2;
  PliableOptions solver;
};

RunReport sweep(const ProblemInstance& inst, const SweepOptions& options);

// Rates are printed to four decimals. Wall time is only included on request
// so that reports are reproducible byte for byte.
std::string report_csv(const RunReport& report, bool with_timing = false);
Json report_json(const RunReport& report, bool with_timing = false);

}  // namespace vpic

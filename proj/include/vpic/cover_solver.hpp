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

// Coding hypergraph over [0:k-1]^m: maximal-edge enumeration, exact minimum
// edge cover by branch-and-bound, and codebook assembly from a cover.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "vpic/core_model.hpp"
#include "vpic/decodability.hpp"

namespace vpic {

struct EnumerateOptions {
  // Above this many maximal edges the hypergraph switches to lazy,
  // per-vertex enumeration.
  std::uint64_t edge_cap = 2'000'000;
  DecodeChoices choices;
};

// Either a complete, canonically sorted list of maximal edges, or a lazy
// source that enumerates the maximal edges through a vertex on request.
class CodingHypergraph {
 public:
  // A plain set system; used for generic covering and in tests.
  static CodingHypergraph from_edges(VertexId vertex_count,
                                     std::vector<Hyperedge> edges);

  VertexId vertex_count() const { return vertex_count_; }
  bool is_lazy() const { return lazy_ != nullptr; }
  // Empty in lazy mode.
  const std::vector<Hyperedge>& edges() const { return edges_; }
  std::size_t max_edge_size() const;
  // Sorted canonically. Thread-safe; cached in lazy mode.
  std::vector<Hyperedge> edges_containing(VertexId v) const;
  // Largest fiber size any edge can have (k^{m-1} when built from an
  // instance, else the largest listed edge).
  std::uint64_t fiber_cap() const { return fiber_cap_; }

 private:
  friend CodingHypergraph enumerate_maximal_edges(const ProblemInstance&,
                                                  const Alphabet&,
                                                  const EnumerateOptions&);
  struct LazySource;

  VertexId vertex_count_ = 0;
  std::uint64_t fiber_cap_ = 0;
  std::vector<Hyperedge> edges_;
  std::shared_ptr<LazySource> lazy_;
};

// Throws CapacityError when k^m exceeds the exact-solving limit.
CodingHypergraph enumerate_maximal_edges(const ProblemInstance& inst,
                                         const Alphabet& k,
                                         const EnumerateOptions& options = {});

// Every maximal valid fiber containing `v`, sorted canonically.
std::vector<Hyperedge> maximal_edges_containing(const VertexSpace& space,
                                                const ProblemInstance& inst,
                                                VertexId v,
                                                const DecodeChoices& choices = {});

struct SearchBudget {
  std::optional<double> time_limit_seconds;
  std::optional<std::uint64_t> node_limit;
  int threads = 1;
};

struct CoverSolution {
  std::vector<Hyperedge> edges;
  std::uint32_t t = 0;
  bool optimal = false;
  std::uint32_t root_lower_bound = 0;
  std::uint64_t nodes = 0;
};

// Exact minimum edge cover. The returned cover is the first optimum met by
// the canonical sequential branching order, whatever the thread count.
CoverSolution min_cover(const CodingHypergraph& hg,
                        const SearchBudget& budget = {});

// Assigns each realisation to the first edge of the cover containing it and
// derives decoders from the resulting fibers.
VPCodebook build_codebook(const CoverSolution& sol, const ProblemInstance& inst,
                          const Alphabet& k, const DecodeChoices& choices = {});

struct SolveOptions {
  EnumerateOptions enumerate;
  SearchBudget budget;
};

struct SolveResult {
  VPCodebook codebook;
  double rate = 0;
  bool optimal = false;
  std::uint32_t root_lower_bound = 0;
  std::uint64_t edge_count = 0;  // 0 in lazy mode
  std::uint64_t max_edge_size = 0;
  bool lazy = false;
  std::uint64_t nodes = 0;
};

SolveResult solve(const ProblemInstance& inst, const Alphabet& k,
                  const SolveOptions& options = {});

}  // namespace vpic

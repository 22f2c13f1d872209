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

#include <algorithm>
#include <random>

#include "doctest.h"

#include "helpers.hpp"
#include "vpic/cover_solver.hpp"

using namespace vpic;
using namespace vpic::testing;

namespace {

RefInstance ref_of(const ProblemInstance& inst, int k) {
  RefInstance ref{inst.message_count(), k, {}};
  for (MessageMask h : inst.receivers()) ref.receivers.push_back(mask_indices(h));
  return ref;
}

}  // namespace

TEST_CASE("m = 2, U = {{1}}, k = 2 has exactly four maximal edges") {
  const auto inst = make_instance(2, {{0}});
  const auto hg = enumerate_maximal_edges(inst, Alphabet(2));
  // {00,10}, {00,11}, {01,10}, {01,11}
  const std::vector<Hyperedge> expect{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  CHECK(hg.edges() == expect);
  const auto sol = min_cover(hg);
  CHECK(sol.t == 2);
  CHECK(sol.optimal);
}

TEST_CASE("maximal edges match brute force on small instances") {
  for (const auto& [inst, k] : std::vector<std::pair<ProblemInstance, int>>{
           {singleton_instance(), 2},
           {chain_instance(), 2},
           {make_instance(2, {{}, {0}}), 3},
           {make_instance(2, {{0}, {1}}), 4},
           {make_instance(4, {{0, 1}, {2, 3}}), 2}}) {
    const auto ref = ref_of(inst, k);
    const auto valid = all_valid_subsets(ref);
    const auto brute = brute_maximal_edges(ref, valid);
    const auto hg = enumerate_maximal_edges(inst, Alphabet(k));
    REQUIRE(hg.edges().size() == brute.size());
    for (std::size_t i = 0; i < brute.size(); ++i) {
      REQUIRE(hg.edges()[i] == Hyperedge(brute[i].begin(), brute[i].end()));
    }
  }
}

TEST_CASE("singleton instance edge counts") {
  const auto inst = singleton_instance();
  const auto h2 = enumerate_maximal_edges(inst, Alphabet(2));
  CHECK(h2.edges().size() == 16);
  CHECK(h2.max_edge_size() == 2);
  const auto h3 = enumerate_maximal_edges(inst, Alphabet(3));
  CHECK(h3.edges().size() == 225);
  CHECK(h3.max_edge_size() == 4);
}

TEST_CASE("per-vertex enumeration agrees with the full list") {
  const auto inst = chain_instance();
  const Alphabet k(3);
  const VertexSpace space(3, k);
  const auto hg = enumerate_maximal_edges(inst, k);
  for (VertexId v = 0; v < space.size(); ++v) {
    std::vector<Hyperedge> expect;
    for (const auto& e : hg.edges()) {
      if (std::binary_search(e.begin(), e.end(), v)) expect.push_back(e);
    }
    REQUIRE(maximal_edges_containing(space, inst, v) == expect);
    REQUIRE(hg.edges_containing(v) == expect);
  }
}

TEST_CASE("lazy mode solves the same instance") {
  const auto inst = singleton_instance();
  const Alphabet k(3);
  EnumerateOptions opts;
  opts.edge_cap = 10;
  const auto lazy = enumerate_maximal_edges(inst, k, opts);
  CHECK(lazy.is_lazy());
  CHECK(lazy.edges().empty());
  CHECK(lazy.fiber_cap() == 9);
  const auto sol = min_cover(lazy);
  CHECK(sol.t == 7);
  CHECK(sol.optimal);

  SolveOptions so;
  so.enumerate.edge_cap = 10;
  const auto res = solve(inst, k, so);
  CHECK(res.lazy);
  CHECK(res.codebook.t == 7);
  CHECK(verify_codebook(res.codebook, inst, k).ok);
}

TEST_CASE("min_cover on a plain set system") {
  // Cover {0..5}; the greedy pick {0,1,2,3} leads to 3 sets, optimum is 2.
  const auto hg = CodingHypergraph::from_edges(
      6, {{0, 1, 2, 3}, {0, 1, 4}, {2, 3, 5}, {4}, {5}});
  const auto sol = min_cover(hg);
  CHECK(sol.t == 2);
  CHECK(sol.optimal);
  CHECK(sol.edges == std::vector<Hyperedge>{{0, 1, 4}, {2, 3, 5}});
}

TEST_CASE("min_cover agrees with exhaustive search on random set systems") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 9);
    const int count = 3 + static_cast<int>(rng() % 10);
    std::vector<Hyperedge> edges;
    std::vector<std::vector<std::uint32_t>> plain;
    for (int v = 0; v < n; ++v) edges.push_back({static_cast<VertexId>(v)});
    for (int i = 0; i < count; ++i) {
      Hyperedge e;
      for (int v = 0; v < n; ++v) {
        if (rng() % 3 == 0) e.push_back(v);
      }
      if (!e.empty()) edges.push_back(e);
    }
    for (const auto& e : edges) plain.emplace_back(e.begin(), e.end());
    const int expect = brute_cover_by_subsets(plain, n);
    REQUIRE(expect > 0);
    const auto sol = min_cover(CodingHypergraph::from_edges(n, edges));
    REQUIRE(static_cast<int>(sol.t) == expect);
    std::vector<bool> covered(n, false);
    for (const auto& e : sol.edges) {
      for (VertexId v : e) covered[v] = true;
    }
    REQUIRE(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("solutions are identical for every thread count") {
  const auto inst = singleton_instance();
  const Alphabet k(4);
  const auto hg = enumerate_maximal_edges(inst, k);
  SearchBudget one;
  const auto base = min_cover(hg, one);
  CHECK(base.t == 11);
  for (int threads : {2, 4, 8}) {
    SearchBudget b;
    b.threads = threads;
    const auto other = min_cover(hg, b);
    CHECK(other.t == base.t);
    CHECK(other.edges == base.edges);
    CHECK(other.optimal);
  }
}

TEST_CASE("node budget yields a valid non-certified cover") {
  // Three disjoint copies of the earlier trap, so the root bound is loose.
  std::vector<Hyperedge> edges;
  for (VertexId o = 0; o < 18; o += 6) {
    for (const Hyperedge& e : std::vector<Hyperedge>{
             {0, 1, 2, 3}, {0, 1, 4}, {2, 3, 5}, {4}, {5}}) {
      Hyperedge shifted;
      for (VertexId v : e) shifted.push_back(v + o);
      edges.push_back(shifted);
    }
  }
  const auto hg = CodingHypergraph::from_edges(18, edges);
  SearchBudget b;
  b.node_limit = 1;
  const auto sol = min_cover(hg, b);
  CHECK_FALSE(sol.optimal);
  CHECK(sol.t >= 6);
  std::vector<bool> covered(18, false);
  for (const auto& e : sol.edges) {
    for (VertexId v : e) covered[v] = true;
  }
  CHECK(std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }));
  CHECK(min_cover(hg).t == 6);
}

TEST_CASE("solve builds verified codebooks") {
  for (const auto& [inst, k, t] : std::vector<std::tuple<ProblemInstance, int, int>>{
           {singleton_instance(), 2, 4},
           {singleton_instance(), 3, 7},
           {chain_instance(), 2, 4},
           {make_instance(2, {{0}}), 3, 3}}) {
    const auto res = solve(inst, Alphabet(k));
    CHECK(res.codebook.t == static_cast<std::uint32_t>(t));
    CHECK(res.optimal);
    CHECK(res.root_lower_bound <= res.codebook.t);
    CHECK(verify_codebook(res.codebook, inst, Alphabet(k)).ok);
    CHECK(res.rate == doctest::Approx(rate_of(t, Alphabet(k))));
  }
}

TEST_CASE("exact solving refuses oversized cubes") {
  const auto inst = make_instance(25, {{0}});
  CHECK_THROWS_AS(enumerate_maximal_edges(inst, Alphabet(2)), CapacityError);
}

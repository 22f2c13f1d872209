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

#include "vpic/cover_solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

namespace vpic {

struct CodingHypergraph::LazySource {
  LazySource(VertexSpace s, ProblemInstance i, DecodeChoices c)
      : space(std::move(s)), inst(std::move(i)), choices(std::move(c)) {}

  VertexSpace space;
  ProblemInstance inst;
  DecodeChoices choices;
  std::mutex mu;
  std::map<VertexId, std::vector<Hyperedge>> cache;
};

namespace {

// Bron-Kerbosch style recursion over a downward-closed family: `candidates`
// are vertices after the last added one that keep the fiber valid,
// `excluded` are earlier vertices that still could be added. A fiber is
// maximal exactly when both are empty.
class MaximalEnumerator {
 public:
  MaximalEnumerator(FiberOracle& oracle,
                    std::function<bool(std::span<const VertexId>)> emit)
      : oracle_(oracle), emit_(std::move(emit)) {}

  // Returns false if `emit` asked to stop.
  bool run(std::vector<VertexId> candidates, std::vector<VertexId> excluded) {
    if (candidates.empty()) {
      if (!excluded.empty()) return true;
      return emit_(oracle_.members());
    }
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const VertexId v = candidates[a];
      oracle_.add(v);
      std::vector<VertexId> next_candidates;
      std::vector<VertexId> next_excluded;
      for (std::size_t b = a + 1; b < candidates.size(); ++b) {
        if (oracle_.can_add(candidates[b])) next_candidates.push_back(candidates[b]);
      }
      for (VertexId x : excluded) {
        if (oracle_.can_add(x)) next_excluded.push_back(x);
      }
      const bool go_on = run(std::move(next_candidates), std::move(next_excluded));
      oracle_.pop();
      if (!go_on) return false;
      excluded.push_back(v);
    }
    return true;
  }

 private:
  FiberOracle& oracle_;
  std::function<bool(std::span<const VertexId>)> emit_;
};

Hyperedge sorted_copy(std::span<const VertexId> members) {
  Hyperedge e(members.begin(), members.end());
  std::sort(e.begin(), e.end());
  return e;
}

std::uint64_t instance_fiber_cap(const ProblemInstance& inst, const Alphabet& k) {
  return realisation_count(inst.message_count() - 1, k);
}

}  // namespace

CodingHypergraph CodingHypergraph::from_edges(VertexId vertex_count,
                                              std::vector<Hyperedge> edges) {
  CodingHypergraph hg;
  hg.vertex_count_ = vertex_count;
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (e.empty() || std::adjacent_find(e.begin(), e.end()) != e.end() ||
        e.back() >= vertex_count) {
      throw InputError("hyperedge must be a nonempty set of valid vertices");
    }
    hg.fiber_cap_ = std::max<std::uint64_t>(hg.fiber_cap_, e.size());
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  hg.edges_ = std::move(edges);
  return hg;
}

std::size_t CodingHypergraph::max_edge_size() const {
  if (is_lazy()) return fiber_cap_;
  std::size_t best = 0;
  for (const auto& e : edges_) best = std::max(best, e.size());
  return best;
}

std::vector<Hyperedge> CodingHypergraph::edges_containing(VertexId v) const {
  if (v >= vertex_count_) throw InputError("vertex id out of range");
  if (!is_lazy()) {
    std::vector<Hyperedge> out;
    for (const auto& e : edges_) {
      if (std::binary_search(e.begin(), e.end(), v)) out.push_back(e);
    }
    return out;
  }
  {
    std::lock_guard lock(lazy_->mu);
    auto it = lazy_->cache.find(v);
    if (it != lazy_->cache.end()) return it->second;
  }
  auto edges = maximal_edges_containing(lazy_->space, lazy_->inst, v,
                                        lazy_->choices);
  std::lock_guard lock(lazy_->mu);
  return lazy_->cache.try_emplace(v, std::move(edges)).first->second;
}

std::vector<Hyperedge> maximal_edges_containing(const VertexSpace& space,
                                                const ProblemInstance& inst,
                                                VertexId v,
                                                const DecodeChoices& choices) {
  FiberOracle oracle(space, inst, choices);
  oracle.add(v);
  std::vector<VertexId> candidates;
  for (VertexId u = 0; u < space.size(); ++u) {
    if (u != v && oracle.can_add(u)) candidates.push_back(u);
  }
  std::vector<Hyperedge> out;
  MaximalEnumerator(oracle, [&out](std::span<const VertexId> members) {
    out.push_back(sorted_copy(members));
    return true;
  }).run(std::move(candidates), {});
  std::sort(out.begin(), out.end());
  return out;
}

CodingHypergraph enumerate_maximal_edges(const ProblemInstance& inst,
                                         const Alphabet& k,
                                         const EnumerateOptions& options) {
  require_exact_size(inst.message_count(), k);
  VertexSpace space(inst.message_count(), k);
  CodingHypergraph hg;
  hg.vertex_count_ = space.size();
  hg.fiber_cap_ = instance_fiber_cap(inst, k);

  FiberOracle oracle(space, inst, options.choices);
  std::vector<VertexId> all(space.size());
  for (VertexId v = 0; v < space.size(); ++v) all[v] = v;
  std::vector<Hyperedge> edges;
  const bool complete =
      MaximalEnumerator(oracle, [&](std::span<const VertexId> members) {
        if (edges.size() >= options.edge_cap) return false;
        edges.push_back(sorted_copy(members));
        return true;
      }).run(std::move(all), {});

  if (complete) {
    std::sort(edges.begin(), edges.end());
    hg.edges_ = std::move(edges);
  } else {
    hg.lazy_ = std::make_shared<CodingHypergraph::LazySource>(std::move(space), inst,
                                            options.choices);
  }
  return hg;
}

namespace {

using Clock = std::chrono::steady_clock;
using Bits = std::vector<std::uint64_t>;

struct Shared {
  std::atomic<std::uint32_t> best{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> exhausted{false};
  std::atomic<std::uint64_t> nodes{0};
  std::optional<Clock::time_point> deadline;
  std::optional<std::uint64_t> node_limit;
  std::mutex mu;
  std::vector<Bits> best_edges;
};

// Immutable view of the set system shared by all workers.
struct Model {
  const CodingHypergraph* hg = nullptr;
  VertexId n = 0;
  std::size_t words = 0;
  bool lazy = false;
  std::uint64_t fiber_cap = 1;
  // Complete mode only.
  std::vector<std::uint64_t> edge_bits;  // edge-major, `words` per edge
  std::vector<std::vector<std::uint32_t>> incidence;

  std::size_t edge_count() const { return words ? edge_bits.size() / words : 0; }
  const std::uint64_t* edge(std::size_t e) const { return &edge_bits[e * words]; }
};

Bits to_bits(const Hyperedge& e, std::size_t words) {
  Bits b(words, 0);
  for (VertexId v : e) b[v >> 6] |= std::uint64_t{1} << (v & 63);
  return b;
}

Hyperedge from_bits(const Bits& b) {
  Hyperedge e;
  for (std::size_t w = 0; w < b.size(); ++w) {
    for (std::uint64_t x = b[w]; x != 0; x &= x - 1) {
      e.push_back(static_cast<VertexId>(w * 64 + std::countr_zero(x)));
    }
  }
  return e;
}

std::uint32_t count_and(const std::uint64_t* a, const Bits& u) {
  std::uint32_t c = 0;
  for (std::size_t w = 0; w < u.size(); ++w) c += std::popcount(a[w] & u[w]);
  return c;
}

class Worker {
 public:
  Worker(const Model& model, Shared& shared) : model_(model), shared_(shared) {
    cov_.resize(model.edge_count());
    stamp_.assign(model.edge_count(), 0);
  }

  struct Candidate {
    const std::uint64_t* bits;
    std::uint32_t cover;
    std::size_t order;
  };

  // Lower bound on edges still needed to cover `u`; also fills cov_.
  std::uint32_t lower_bound(const Bits& u, std::uint32_t left) {
    if (left == 0) return 0;
    if (model_.lazy) {
      return static_cast<std::uint32_t>((left + model_.fiber_cap - 1) /
                                         model_.fiber_cap);
    }
    std::uint32_t widest = 0;
    for (std::size_t e = 0; e < model_.edge_count(); ++e) {
      cov_[e] = count_and(model_.edge(e), u);
      widest = std::max(widest, cov_[e]);
    }
    if (widest == 0) return std::numeric_limits<std::uint32_t>::max();
    const std::uint32_t by_width = (left + widest - 1) / widest;

    // Dual-feasible weights 1/s(v), s(v) the widest edge through v.
    double dual = 0;
    std::uint32_t packing = 0;
    ++epoch_;
    for (std::size_t w = 0; w < u.size(); ++w) {
      for (std::uint64_t x = u[w]; x != 0; x &= x - 1) {
        const VertexId v = static_cast<VertexId>(w * 64 + std::countr_zero(x));
        std::uint32_t s = 0;
        bool disjoint = true;
        for (std::uint32_t e : model_.incidence[v]) {
          s = std::max(s, cov_[e]);
          if (stamp_[e] == epoch_) disjoint = false;
        }
        if (s == 0) return std::numeric_limits<std::uint32_t>::max();
        dual += 1.0 / s;
        if (disjoint) {
          ++packing;
          for (std::uint32_t e : model_.incidence[v]) stamp_[e] = epoch_;
        }
      }
    }
    const auto by_dual = static_cast<std::uint32_t>(std::ceil(dual - 1e-9));
    return std::max({by_width, by_dual, packing});
  }

  VertexId branch_vertex(const Bits& u) const {
    VertexId best = 0;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t w = 0; w < u.size(); ++w) {
      for (std::uint64_t x = u[w]; x != 0; x &= x - 1) {
        const VertexId v = static_cast<VertexId>(w * 64 + std::countr_zero(x));
        if (model_.lazy) return v;
        if (model_.incidence[v].size() < best_count) {
          best_count = model_.incidence[v].size();
          best = v;
        }
      }
    }
    return best;
  }

  const std::vector<Bits>& lazy_edges(VertexId v) {
    auto it = lazy_cache_.find(v);
    if (it == lazy_cache_.end()) {
      std::vector<Bits> bits;
      for (const auto& e : model_.hg->edges_containing(v)) {
        bits.push_back(to_bits(e, model_.words));
      }
      it = lazy_cache_.emplace(v, std::move(bits)).first;
    }
    return it->second;
  }

  // Edges through `v`, dropping any whose uncovered part is contained in
  // another candidate's, widest first.
  std::vector<Candidate> candidates(VertexId v, const Bits& u) {
    std::vector<Candidate> out;
    if (model_.lazy) {
      const auto& edges = lazy_edges(v);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        out.push_back({edges[i].data(), count_and(edges[i].data(), u), i});
      }
    } else {
      for (std::uint32_t e : model_.incidence[v]) {
        out.push_back({model_.edge(e), cov_[e], e});
      }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
      return a.cover != b.cover ? a.cover > b.cover : a.order < b.order;
    });
    if (out.size() > kDominanceLimit) return out;
    std::vector<Candidate> kept;
    for (const auto& c : out) {
      bool dominated = false;
      for (const auto& d : kept) {
        bool subset = true;
        for (std::size_t w = 0; w < u.size() && subset; ++w) {
          subset = ((c.bits[w] & u[w]) & ~d.bits[w]) == 0;
        }
        if (subset) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(c);
    }
    return kept;
  }

  bool out_of_budget() {
    const auto n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (shared_.node_limit && n > *shared_.node_limit) {
      shared_.exhausted = true;
      shared_.stop = true;
    }
    if (shared_.deadline && (++ticks_ & 255) == 0 &&
        Clock::now() > *shared_.deadline) {
      shared_.exhausted = true;
      shared_.stop = true;
    }
    return shared_.stop.load(std::memory_order_relaxed);
  }

  // With `target` set, stops at the first cover of that size; otherwise
  // keeps improving shared_.best.
  void search(Bits& u, std::uint32_t left, std::optional<std::uint32_t> target) {
    if (out_of_budget()) return;
    const auto depth = static_cast<std::uint32_t>(chosen_.size());
    if (left == 0) {
      std::lock_guard lock(shared_.mu);
      if (target || depth < shared_.best) {
        shared_.best = depth;
        shared_.best_edges = chosen_;
        if (target) shared_.stop = true;
      }
      return;
    }
    const std::uint32_t limit = target ? *target + 1 : shared_.best.load();
    const std::uint32_t lb = lower_bound(u, left);
    if (lb == std::numeric_limits<std::uint32_t>::max() || depth + lb >= limit) {
      return;
    }
    const VertexId v = branch_vertex(u);
    for (const auto& c : candidates(v, u)) {
      std::uint32_t removed = 0;
      Bits saved(u);
      for (std::size_t w = 0; w < u.size(); ++w) {
        removed += std::popcount(u[w] & c.bits[w]);
        u[w] &= ~c.bits[w];
      }
      chosen_.emplace_back(c.bits, c.bits + model_.words);
      search(u, left - removed, target);
      chosen_.pop_back();
      u = std::move(saved);
      if (shared_.stop.load(std::memory_order_relaxed)) return;
      if (!target && depth + lb >= shared_.best.load()) return;
    }
  }

  std::vector<Bits>& chosen() { return chosen_; }

 private:
  static constexpr std::size_t kDominanceLimit = 4096;

  const Model& model_;
  Shared& shared_;
  std::vector<std::uint32_t> cov_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::uint64_t ticks_ = 0;
  std::vector<Bits> chosen_;
  std::map<VertexId, std::vector<Bits>> lazy_cache_;
};

std::vector<Bits> greedy_cover(const Model& model, Worker& worker) {
  Bits u(model.words, 0);
  for (VertexId v = 0; v < model.n; ++v) u[v >> 6] |= std::uint64_t{1} << (v & 63);
  std::uint32_t left = model.n;
  std::vector<Bits> out;
  while (left > 0) {
    const std::uint64_t* pick = nullptr;
    std::uint32_t pick_cover = 0;
    if (model.lazy) {
      VertexId v = 0;
      while (!(u[v >> 6] >> (v & 63) & 1u)) ++v;
      for (const auto& e : worker.lazy_edges(v)) {
        const auto c = count_and(e.data(), u);
        if (c > pick_cover) {
          pick_cover = c;
          pick = e.data();
        }
      }
    } else {
      for (std::size_t e = 0; e < model.edge_count(); ++e) {
        const auto c = count_and(model.edge(e), u);
        if (c > pick_cover) {
          pick_cover = c;
          pick = model.edge(e);
        }
      }
    }
    if (pick == nullptr) throw InputError("some vertex lies in no hyperedge");
    for (std::size_t w = 0; w < model.words; ++w) u[w] &= ~pick[w];
    left -= pick_cover;
    out.emplace_back(pick, pick + model.words);
  }
  return out;
}

}  // namespace

CoverSolution min_cover(const CodingHypergraph& hg, const SearchBudget& budget) {
  if (hg.vertex_count() == 0 || (!hg.is_lazy() && hg.edges().empty())) {
    throw InputError("cannot cover an empty hypergraph");
  }
  Model model;
  model.hg = &hg;
  model.n = hg.vertex_count();
  model.words = (model.n + 63) / 64;
  model.lazy = hg.is_lazy();
  model.fiber_cap = std::max<std::uint64_t>(1, hg.fiber_cap());
  if (!model.lazy) {
    model.incidence.resize(model.n);
    model.edge_bits.reserve(hg.edges().size() * model.words);
    for (std::size_t e = 0; e < hg.edges().size(); ++e) {
      const Bits b = to_bits(hg.edges()[e], model.words);
      model.edge_bits.insert(model.edge_bits.end(), b.begin(), b.end());
      for (VertexId v : hg.edges()[e]) {
        model.incidence[v].push_back(static_cast<std::uint32_t>(e));
      }
    }
    for (VertexId v = 0; v < model.n; ++v) {
      if (model.incidence[v].empty()) {
        throw InputError("vertex " + std::to_string(v) + " lies in no hyperedge");
      }
    }
  }

  Shared shared;
  if (budget.time_limit_seconds) {
    shared.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                         std::chrono::duration<double>(
                                             *budget.time_limit_seconds));
  }
  shared.node_limit = budget.node_limit;

  Worker root(model, shared);
  shared.best_edges = greedy_cover(model, root);
  shared.best = static_cast<std::uint32_t>(shared.best_edges.size());

  Bits all(model.words, 0);
  for (VertexId v = 0; v < model.n; ++v) all[v >> 6] |= std::uint64_t{1} << (v & 63);
  CoverSolution sol;
  sol.root_lower_bound = root.lower_bound(all, model.n);

  const int threads = model.lazy ? 1 : std::max(1, budget.threads);
  if (sol.root_lower_bound < shared.best) {
    if (threads == 1) {
      Bits u = all;
      root.search(u, model.n, std::nullopt);
    } else {
      // Root branches are handed out to workers; the incumbent is shared.
      const VertexId v = root.branch_vertex(all);
      const auto tasks = root.candidates(v, all);
      std::atomic<std::size_t> next{0};
      auto run = [&] {
        Worker w(model, shared);
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
          if (shared.stop) break;
          Bits u = all;
          std::uint32_t removed = 0;
          for (std::size_t x = 0; x < model.words; ++x) {
            removed += std::popcount(u[x] & tasks[i].bits[x]);
            u[x] &= ~tasks[i].bits[x];
          }
          w.chosen().assign(1, Bits(tasks[i].bits, tasks[i].bits + model.words));
          w.search(u, model.n - removed, std::nullopt);
        }
      };
      std::vector<std::jthread> pool;
      for (int i = 0; i < threads; ++i) pool.emplace_back(run);
    }
  }

  sol.optimal = !shared.exhausted;
  sol.t = shared.best;
  std::vector<Bits> result = shared.best_edges;
  if (sol.optimal) {
    // Re-derive the first optimum in canonical sequential order.
    shared.stop = false;
    Worker canon(model, shared);
    Bits u = all;
    canon.search(u, model.n, sol.t);
    if (!shared.exhausted) result = shared.best_edges;
  }
  sol.nodes = shared.nodes;
  for (const auto& b : result) sol.edges.push_back(from_bits(b));
  return sol;
}

VPCodebook build_codebook(const CoverSolution& sol, const ProblemInstance& inst,
                          const Alphabet& k, const DecodeChoices& choices) {
  const VertexSpace space(inst.message_count(), k);
  constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> raw(space.size(), kNone);
  for (std::size_t i = 0; i < sol.edges.size(); ++i) {
    for (VertexId v : sol.edges[i]) {
      if (v >= space.size()) throw InputError("cover names an unknown vertex");
      if (raw[v] == kNone) raw[v] = i;
    }
  }
  if (std::find(raw.begin(), raw.end(), kNone) != raw.end()) {
    throw InputError("cover leaves some realisation uncovered");
  }
  VPCodebook cb;
  cb.message_count = inst.message_count();
  cb.alphabet_size = k.size();
  cb.t = compact_assignment(raw, cb.assignment);
  cb.decoders = derive_decoders(cb, inst, space, choices);
  return cb;
}

SolveResult solve(const ProblemInstance& inst, const Alphabet& k,
                  const SolveOptions& options) {
  const auto hg = enumerate_maximal_edges(inst, k, options.enumerate);
  const auto sol = min_cover(hg, options.budget);
  SolveResult r;
  r.codebook = build_codebook(sol, inst, k, options.enumerate.choices);
  r.rate = rate_of(r.codebook.t, k);
  r.optimal = sol.optimal;
  r.root_lower_bound = sol.root_lower_bound;
  r.edge_count = hg.is_lazy() ? 0 : hg.edges().size();
  r.max_edge_size = hg.max_edge_size();
  r.lazy = hg.is_lazy();
  r.nodes = sol.nodes;
  return r;
}

}  // namespace vpic

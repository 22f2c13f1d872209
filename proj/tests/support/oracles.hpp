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

// Reference implementations used only by tests. They share no code with
// the library beyond plain data types, and favour obviousness over speed.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace vpic::testing {

using Vec = std::vector<int>;

inline Vec digits_of(std::uint64_t index, int k, int m) {
  Vec x(m);
  for (int i = m - 1; i >= 0; --i) {
    x[i] = static_cast<int>(index % k);
    index /= k;
  }
  return x;
}

inline int cube_size(int k, int m) {
  int n = 1;
  for (int i = 0; i < m; ++i) n *= k;
  return n;
}

// Receivers as 0-based index lists.
struct RefInstance {
  int m = 0;
  int k = 2;
  std::vector<Vec> receivers;
};

// Direct reading of the decoding requirement: for every receiver, every
// member's slice (members agreeing with it on H) has a coordinate outside H
// on which all slice members agree.
inline bool naive_valid(const std::vector<Vec>& members, const RefInstance& inst) {
  for (const Vec& h : inst.receivers) {
    for (const Vec& x : members) {
      std::vector<const Vec*> slice;
      for (const Vec& y : members) {
        bool same = true;
        for (int j : h) same = same && x[j] == y[j];
        if (same) slice.push_back(&y);
      }
      bool some_constant = false;
      for (int i = 0; i < inst.m && !some_constant; ++i) {
        if (std::find(h.begin(), h.end(), i) != h.end()) continue;
        bool constant = true;
        for (const Vec* y : slice) constant = constant && (*y)[i] == x[i];
        some_constant = constant;
      }
      if (!some_constant) return false;
    }
  }
  return true;
}

inline std::vector<Vec> members_of_mask(std::uint64_t mask, const RefInstance& inst) {
  std::vector<Vec> out;
  for (int v = 0; mask != 0; ++v, mask >>= 1) {
    if (mask & 1u) out.push_back(digits_of(v, inst.k, inst.m));
  }
  return out;
}

// valid[mask] for every subset of the (at most 20-vertex) cube.
inline std::vector<bool> all_valid_subsets(const RefInstance& inst) {
  const int n = cube_size(inst.k, inst.m);
  std::vector<bool> valid(std::size_t{1} << n, false);
  for (std::uint64_t mask = 1; mask < valid.size(); ++mask) {
    valid[mask] = naive_valid(members_of_mask(mask, inst), inst);
  }
  return valid;
}

// Maximal valid subsets as ascending vertex lists, sorted.
inline std::vector<std::vector<std::uint32_t>> brute_maximal_edges(
    const RefInstance& inst, const std::vector<bool>& valid) {
  const int n = cube_size(inst.k, inst.m);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t mask = 1; mask < valid.size(); ++mask) {
    if (!valid[mask]) continue;
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v) {
      if (!(mask >> v & 1u) && valid[mask | (std::uint64_t{1} << v)]) maximal = false;
    }
    if (!maximal) continue;
    std::vector<std::uint32_t> e;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1u) e.push_back(static_cast<std::uint32_t>(v));
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Fewest valid fibers partitioning the cube, by DP over vertex subsets.
inline int min_partition(const std::vector<bool>& valid, int n) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<int> best(full + 1, std::numeric_limits<int>::max());
  best[0] = 0;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t rest = mask ^ low;
    // Sub-masks of `rest`, each joined with the lowest vertex.
    for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint64_t part = sub | low;
      if (valid[part] && best[mask ^ part] != std::numeric_limits<int>::max()) {
        best[mask] = std::min(best[mask], best[mask ^ part] + 1);
      }
      if (sub == 0) break;
    }
  }
  return best[full];
}

// Smallest number of listed edges whose union is the whole vertex set, by
// trying every combination of each size in turn. Returns -1 when the
// combination count would exceed `limit`.
inline int brute_cover_by_subsets(const std::vector<std::vector<std::uint32_t>>& edges,
                                  int n, std::uint64_t limit = 20'000'000) {
  std::vector<std::uint64_t> masks;
  for (const auto& e : edges) {
    std::uint64_t m = 0;
    for (auto v : e) m |= std::uint64_t{1} << v;
    masks.push_back(m);
  }
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const int count = static_cast<int>(masks.size());
  std::uint64_t tried = 0;
  for (int size = 1; size <= count; ++size) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      if (++tried > limit) return -1;
      std::uint64_t u = 0;
      for (int i : pick) u |= masks[i];
      if (u == full) return size;
      int i = size;
      while (i > 0 && pick[i - 1] == count - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (int j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return -1;
}

// Every family of proper subsets of [0:m-1], as bitmasks of the family.
inline std::vector<std::vector<Vec>> all_receiver_families(int m) {
  std::vector<Vec> proper;
  for (int s = 0; s < (1 << m) - 1; ++s) {
    Vec h;
    for (int i = 0; i < m; ++i) {
      if (s >> i & 1) h.push_back(i);
    }
    proper.push_back(h);
  }
  std::vector<std::vector<Vec>> out;
  for (std::uint64_t f = 1; f < (std::uint64_t{1} << proper.size()); ++f) {
    std::vector<Vec> family;
    for (std::size_t j = 0; j < proper.size(); ++j) {
      if (f >> j & 1u) family.push_back(proper[j]);
    }
    out.push_back(std::move(family));
  }
  return out;
}

}  // namespace vpic::testing

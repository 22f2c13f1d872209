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

// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "vpic/bounds.hpp"
#include "vpic/constructions.hpp"
#include "vpic/cover_solver.hpp"
#include "vpic/decodability.hpp"
#include "vpic/linear_codes.hpp"
#include "vpic/pliable.hpp"
#include "vpic/report.hpp"

using namespace vpic;
using namespace vpic::testing;

namespace {

struct Check {
  std::string detail;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Check example_optima() {
  Check c;
  const auto inst = singleton_instance();
  const std::map<std::uint32_t, std::pair<std::uint32_t, double>> want{
      {2, {4, 2.0}}, {3, {7, 1.7712}}, {4, {11, 1.7297}}};
  for (const auto& [k, tr] : want) {
    const auto r = solve(inst, Alphabet(k));
    c.expect(r.codebook.t == tr.first && r.optimal,
             "k=" + std::to_string(k) + " gave t=" + std::to_string(r.codebook.t));
    c.expect(std::abs(r.rate - tr.second) < 1e-4, "rate mismatch at k=" + std::to_string(k));
    c.expect(verify_codebook(r.codebook, inst, Alphabet(k)).ok, "codebook does not verify");
  }
  return c;
}

Check pliable_separation() {
  Check c;
  const auto inst = singleton_instance();
  for (std::uint32_t k : {2u, 3u, 4u}) {
    const auto r = pliable_min_t(inst, Alphabet(k));
    c.expect(r.t == k * k && r.optimal,
             "k=" + std::to_string(k) + " gave t=" + std::to_string(r.t));
    c.expect(verify_codebook(r.codebook, inst, Alphabet(k)).ok, "codebook does not verify");
  }
  return c;
}

Check chained_instance() {
  Check c;
  const auto inst = chain_instance();
  for (std::uint32_t k : {2u, 3u}) {
    const Alphabet a(k);
    const auto vp = solve(inst, a);
    const auto pl = pliable_min_t(inst, a);
    c.expect(vp.codebook.t == k * k && vp.optimal, "VP t mismatch at k=" + std::to_string(k));
    c.expect(pl.t == k * k && pl.optimal, "pliable t mismatch at k=" + std::to_string(k));
    const auto bound = chained_decoding_bound(inst, a);
    const auto hg = enumerate_maximal_edges(inst, a);
    c.expect(bound.applicable && bound.fiber_cap == k && hg.max_edge_size() == k,
             "fiber cap does not match the largest edge at k=" + std::to_string(k));
  }
  return c;
}

Check fiber_caps() {
  Check c;
  const auto inst = singleton_instance();
  for (std::uint32_t k : {2u, 3u, 4u}) {
    const Alphabet a(k);
    const auto hg = enumerate_maximal_edges(inst, a);
    const auto generic = generic_bound(inst, a);
    const auto single = singleton_bound(inst, a);
    std::size_t violations = 0;
    for (const auto& e : hg.edges()) {
      if (e.size() > generic.fiber_cap || e.size() > single.fiber_cap) ++violations;
    }
    c.expect(!hg.edges().empty() && violations == 0,
             std::to_string(violations) + " violations at k=" + std::to_string(k));
  }
  return c;
}

// For each receiver: the linear test says decodable iff every affine fiber
// passes the VP oracle for that receiver, and then the fixed index decodes
// everywhere.
Check linear_property() {
  Check c;
  const auto inst = singleton_instance();
  std::mt19937_64 rng(2026);
  for (std::uint32_t q : {2u, 3u}) {
    const PrimeField f(q);
    const Alphabet a(q);
    const VertexSpace space(3, a);
    for (std::size_t rows = 1; rows <= 3; ++rows) {
      for (int trial = 0; trial < 1000; ++trial) {
        Matrix m(rows, 3);
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t col = 0; col < 3; ++col) m.at(r, col) = rng() % q;
        }
        const LinearEncoder enc(m, f);
        std::map<std::vector<std::uint32_t>, Hyperedge> fibers;
        for (VertexId v = 0; v < space.size(); ++v) {
          fibers[linear_encode(enc, space.realisation(v), a, f)].push_back(v);
        }
        const auto check = is_vp_linear(enc, inst, f);
        for (std::size_t h = 0; h < inst.receiver_count(); ++h) {
          const MessageMask rcv = inst.receivers()[h];
          const ProblemInstance one(3, {rcv});
          bool all_valid = true;
          for (const auto& [cw, members] : fibers) {
            all_valid = all_valid && is_valid_fiber(members, one, space);
          }
          const bool says = check.decodable_sets[h] != 0;
          c.expect(says == all_valid, "q=" + std::to_string(q) + " matrix " + enc.str());
          if (!says) continue;
          const int j = check.choice[h];
          for (const auto& [cw, members] : fibers) {
            std::map<std::uint64_t, std::uint32_t> seen;
            for (VertexId v : members) {
              const auto [it, fresh] = seen.emplace(space.side_key(v, rcv), space.digit(v, j));
              c.expect(fresh || it->second == space.digit(v, j),
                       "fixed index fails for " + enc.str());
            }
          }
        }
      }
    }
  }
  const auto search = linear_min_length(inst, PrimeField(3), 3);
  c.expect(search.length && *search.length == 2, "GF(3) search did not return T=2");
  const double alpha3 = rate_of(7, Alphabet(3));
  c.expect(search.length && static_cast<double>(*search.length) > alpha3,
           "linear length does not exceed the VP rate");
  return c;
}

Check concatenation() {
  Check c;
  const auto inst = singleton_instance();
  const auto base = solve(inst, Alphabet(3));
  c.expect(base.codebook.t == 7, "base code is not t=7");
  const auto out = concat_double(base.codebook, inst);
  c.expect(out.codebook.t == 28 && out.codebook.alphabet_size == 6, "doubled code is not t=28, k=6");
  c.expect(verify_codebook(out.codebook, inst, Alphabet(6)).ok, "doubled code does not verify");
  const double bound = std::log(7.0 * 4.0) / std::log(6.0);
  c.expect(std::abs(rate_of(out.codebook.t, Alphabet(6)) - bound) < 1e-9, "rate differs from bound");
  const auto naive = naive_concat(base.codebook, solve(inst, Alphabet(2)).codebook, inst);
  c.expect(!verify_codebook(naive, inst, Alphabet(6)).ok, "naive product was accepted");
  return c;
}

RefInstance ref_from(int m, int k, const std::vector<Vec>& family) {
  return RefInstance{m, k, family};
}

bool oracle_case(const RefInstance& ref, Check& c) {
  const auto inst = make_instance(ref);
  const Alphabet a(ref.k);
  const int n = cube_size(ref.k, ref.m);
  const auto valid = all_valid_subsets(ref);
  const VertexSpace space(ref.m, a);
  // Validity on every subset of size <= 6.
  for (std::uint64_t mask = 1; mask < valid.size(); ++mask) {
    if (std::popcount(mask) > 6) continue;
    Hyperedge e;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1u) e.push_back(v);
    }
    if (is_valid_fiber(e, inst, space) != valid[mask]) {
      c.expect(false, "validity differs on a subset");
      return false;
    }
  }
  const auto hg = enumerate_maximal_edges(inst, a);
  const auto sol = min_cover(hg);
  const int dp = min_partition(valid, n);
  const int brute = brute_cover_by_subsets(brute_maximal_edges(ref, valid), n, 2'000'000);
  const bool ok = sol.optimal && static_cast<int>(sol.t) == dp && (brute < 0 || brute == dp);
  c.expect(ok, "cover size mismatch: solver " + std::to_string(sol.t) + ", reference " +
                   std::to_string(dp));
  return ok;
}

Check oracle_equivalence() {
  Check c;
  int cases = 0;
  for (int k = 2; k <= 16; ++k) {
    for (const auto& fam : all_receiver_families(1)) oracle_case(ref_from(1, k, fam), c), ++cases;
  }
  for (int k = 2; k <= 4; ++k) {
    for (const auto& fam : all_receiver_families(2)) oracle_case(ref_from(2, k, fam), c), ++cases;
  }
  for (const auto& fam : all_receiver_families(3)) oracle_case(ref_from(3, 2, fam), c), ++cases;
  // m = 4 has 2^15 - 1 families; a fixed sample keeps the run short.
  const auto four = all_receiver_families(4);
  std::mt19937_64 rng(99);
  for (int s = 0; s < 48; ++s) {
    oracle_case(ref_from(4, 2, four[rng() % four.size()]), c);
    ++cases;
  }
  c.detail = c.ok ? std::to_string(cases) + " instances" : c.detail;
  return c;
}

Check determinism() {
  Check c;
  for (const auto& inst : {singleton_instance(), chain_instance()}) {
    SweepOptions one;
    one.k_min = 2;
    one.k_max = 4;
    SweepOptions eight = one;
    one.solver.solve.budget.threads = 1;
    eight.solver.solve.budget.threads = 8;
    if (inst == chain_instance()) {
      one.k_max = eight.k_max = 3;
    }
    const auto a = sweep(inst, one);
    const auto b = sweep(inst, eight);
    c.expect(report_csv(a) == report_csv(b), "CSV differs");
    c.expect(report_json(a).dump() == report_json(b).dump(), "JSON differs");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"singleton instance VP optima t=4,7,11", example_optima},
      {"singleton instance pliable optima t=4,9,16", pliable_separation},
      {"chained instance t=k^2 and fiber cap k", chained_instance},
      {"fiber caps on every maximal edge", fiber_caps},
      {"linear decodability property and GF(3) length", linear_property},
      {"alphabet doubling t=28 and naive product rejected", concatenation},
      {"solver and oracle agree with brute force", oracle_equivalence},
      {"sweep output independent of thread count", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu: %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs, c.detail.empty() ? "" : " - ",
                c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

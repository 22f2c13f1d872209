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

#include "vpic/bounds.hpp"

#include <algorithm>
#include <numeric>

namespace vpic {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

std::int64_t Rational::ceil() const {
  const std::int64_t q = num_ / den_;
  return (num_ % den_ > 0) ? q + 1 : q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Json BoundReport::to_json() const {
  Json doc;
  doc["name"] = name;
  doc["applicable"] = applicable;
  doc["fiber_cap"] = fiber_cap;
  doc["t_lower"] = t_lower.str();
  doc["t_lower_ceil"] = t_lower_ceil();
  return doc;
}

namespace {

std::int64_t power(const Alphabet& k, int e) {
  return static_cast<std::int64_t>(realisation_count(e, k));
}

BoundReport not_applicable(std::string name, const ProblemInstance& inst,
                           const Alphabet& k) {
  BoundReport r;
  r.name = std::move(name);
  r.fiber_cap = realisation_count(inst.message_count(), k);
  return r;
}

}  // namespace

BoundReport generic_bound(const ProblemInstance& inst, const Alphabet& k) {
  BoundReport r;
  r.name = "generic";
  r.applicable = true;
  r.fiber_cap = static_cast<std::uint64_t>(power(k, inst.message_count() - 1));
  r.t_lower = Rational(k.size());
  return r;
}

BoundReport singleton_bound(const ProblemInstance& inst, const Alphabet& k) {
  const int m = inst.message_count();
  bool singletons = m >= 3 && inst.receiver_count() == static_cast<std::size_t>(m);
  for (int i = 0; singletons && i < m; ++i) {
    singletons = inst.has_receiver(MessageMask{1} << i);
  }
  if (!singletons) return not_applicable("singleton", inst, k);
  BoundReport r;
  r.name = "singleton";
  r.applicable = true;
  const auto cap = static_cast<std::uint64_t>((m + 1) * power(k, m - 2));
  r.fiber_cap = std::min(cap, realisation_count(m, k));
  const std::int64_t kk = power(k, 2);
  r.t_lower = kk >= m + 1 ? Rational(kk, m + 1) : Rational(1);
  return r;
}

BoundReport chained_decoding_bound(const ProblemInstance& inst,
                                   const Alphabet& k) {
  if (inst.message_count() == 3) {
    for (int j = 0; j < 3; ++j) {
      const MessageMask hub = MessageMask{1} << j;
      bool chain = inst.has_receiver(hub);
      for (int i = 0; chain && i < 3; ++i) {
        if (i != j) chain = inst.has_receiver(hub | (MessageMask{1} << i));
      }
      if (chain) {
        BoundReport r;
        r.name = "chained-decoding";
        r.applicable = true;
        r.fiber_cap = k.size();
        r.t_lower = Rational(power(k, 2));
        return r;
      }
    }
  }
  return not_applicable("chained-decoding", inst, k);
}

std::vector<BoundReport> all_bounds(const ProblemInstance& inst,
                                    const Alphabet& k) {
  return {generic_bound(inst, k), singleton_bound(inst, k),
          chained_decoding_bound(inst, k)};
}

std::int64_t best_lower_bound(const std::vector<BoundReport>& reports) {
  std::int64_t best = 1;
  for (const auto& r : reports) {
    if (r.applicable) best = std::max(best, r.t_lower_ceil());
  }
  return best;
}

bool check_fibers_against_bound(const CodingHypergraph& hg,
                                const BoundReport& report) {
  if (hg.is_lazy()) {
    throw InputError("fiber check needs a completely enumerated hypergraph");
  }
  return std::all_of(hg.edges().begin(), hg.edges().end(),
                     [&](const Hyperedge& e) { return e.size() <= report.fiber_cap; });
}

}  // namespace vpic

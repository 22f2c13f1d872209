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

#include "doctest.h"

#include "helpers.hpp"
#include "vpic/pliable.hpp"

using namespace vpic;
using namespace vpic::testing;

TEST_CASE("parse_choice") {
  const auto inst = singleton_instance();
  const auto c = parse_choice("1:2,2:1,3:1", inst);
  CHECK(c.index == std::vector<int>{1, 0, 0});
  CHECK(c.str(inst) == "1:2,2:1,3:1");
  CHECK(c.masks() == DecodeChoices{0b010, 0b001, 0b001});
  // Omitted receivers take their smallest admissible index.
  CHECK(parse_choice("2:3", inst).index == std::vector<int>{1, 2, 0});
  CHECK(parse_choice("", inst).index == std::vector<int>{1, 0, 0});

  const auto chain = chain_instance();
  const auto cc = parse_choice("-:3,1+3:2", chain);
  CHECK(cc.index == std::vector<int>{2, 1, 2, 1});
  CHECK(cc.str(chain) == "-:3,1:2,1+2:3,1+3:2");
}

TEST_CASE("parse_choice rejections") {
  const auto inst = singleton_instance();
  CHECK_THROWS_AS(parse_choice("1:1", inst), InputError);
  CHECK_THROWS_AS(parse_choice("1:4", inst), InputError);
  CHECK_THROWS_AS(parse_choice("1+2:3", inst), InputError);
  CHECK_THROWS_AS(parse_choice("1-2", inst), InputError);
  CHECK_THROWS_AS(parse_choice("x:1", inst), InputError);
  CHECK_THROWS_AS(validate_choice(ChoiceAssignment{{1, 0}}, inst), InputError);
}

TEST_CASE("pliable oracle on the four-point fiber") {
  const auto inst = singleton_instance();
  const Alphabet k(3);
  Hyperedge e{vid({0, 0, 0}, 3), vid({0, 0, 1}, 3), vid({1, 1, 2}, 3), vid({2, 1, 2}, 3)};
  std::sort(e.begin(), e.end());
  CHECK_FALSE(pliable_valid_fiber(e, inst, k, parse_choice("1:2,2:1,3:1", inst)));
  CHECK(is_valid_fiber(e, inst, k));
}

TEST_CASE("pliable optimum on the singleton instance is k^2") {
  const auto inst = singleton_instance();
  for (std::uint32_t k : {2u, 3u}) {
    const auto r = pliable_min_t(inst, Alphabet(k));
    CHECK(r.t == k * k);
    CHECK(r.optimal);
    CHECK(r.rate == doctest::Approx(2.0));
    CHECK(r.codebook.is_pliable());
    CHECK(verify_codebook(r.codebook, inst, Alphabet(k)).ok);
    CHECK(r.assignments_examined == 8);
  }
}

TEST_CASE("pliable optimum on the chained instance") {
  const auto inst = chain_instance();
  const auto r = pliable_min_t(inst, Alphabet(2));
  CHECK(r.t == 4);
  CHECK(r.optimal);
  CHECK(verify_codebook(r.codebook, inst, Alphabet(2)).ok);
}

TEST_CASE("stops once t reaches k") {
  // One receiver, one choice: t = k right away.
  const auto inst = make_instance(2, {{0}});
  const auto r = pliable_min_t(inst, Alphabet(3));
  CHECK(r.t == 3);
  CHECK(r.assignments_examined == 1);
}

TEST_CASE("fixed choice and thread count do not change the result") {
  const auto inst = singleton_instance();
  const auto fixed = solve_with_choice(inst, Alphabet(2), parse_choice("1:2,2:3,3:1", inst));
  CHECK(fixed.t == 4);
  CHECK(fixed.choice.index == std::vector<int>{1, 2, 0});
  PliableOptions many;
  many.solve.budget.threads = 8;
  const auto a = pliable_min_t(inst, Alphabet(3));
  const auto b = pliable_min_t(inst, Alphabet(3), many);
  CHECK(a.t == b.t);
  CHECK(a.choice == b.choice);
  CHECK(a.codebook == b.codebook);
}

TEST_CASE("assignment cap") {
  PliableOptions tight;
  tight.assignment_cap = 4;
  CHECK_THROWS_AS(pliable_min_t(singleton_instance(), Alphabet(2), tight), CapacityError);
}

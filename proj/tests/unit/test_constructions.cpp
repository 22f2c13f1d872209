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

#include <cmath>
#include <random>

#include "doctest.h"

#include "helpers.hpp"
#include "vpic/constructions.hpp"
#include "vpic/cover_solver.hpp"
#include "vpic/decodability.hpp"

using namespace vpic;
using namespace vpic::testing;

TEST_CASE("XOR chain round-trips from any known bit") {
  for (int m = 2; m <= 6; ++m) {
    for (std::uint32_t word = 0; word < (1u << m); ++word) {
      std::vector<std::uint32_t> y(m);
      for (int i = 0; i < m; ++i) y[i] = word >> i & 1u;
      const auto chain = xor_chain_encode(y);
      CHECK(chain.size() == static_cast<std::size_t>(m - 1));
      for (int known = 0; known < m; ++known) {
        REQUIRE(xor_chain_decode(chain, known, y[known]) == y);
      }
    }
  }
  CHECK_THROWS_AS(xor_chain_encode(std::vector<std::uint32_t>{1}), InputError);
  CHECK_THROWS_AS(xor_chain_encode(std::vector<std::uint32_t>{1, 2}), InputError);
}

TEST_CASE("MDS generators") {
  for (int m = 2; m <= 6; ++m) {
    for (int p = 1; p < m; ++p) {
      const auto spec = make_mds(m, p);
      CHECK(is_prime(spec.field_size));
      CHECK(is_mds(spec));
    }
  }
  CHECK(make_mds(3, 1).field_size == 2);
  CHECK(make_mds(3, 1, 3).field_size == 3);
  CHECK(is_mds(make_mds(3, 1, 3)));
  CHECK(make_mds(4, 2).field_size == 5);
  CHECK_THROWS_AS(make_mds(5, 2, 3), InputError);
  CHECK_THROWS_AS(make_mds(3, 3), InputError);
  // A generator with a repeated column is not MDS.
  auto broken = make_mds(3, 1);
  broken.generator = Matrix(2, 3);
  broken.generator.at(0, 0) = 1;
  broken.generator.at(1, 0) = 1;
  CHECK_FALSE(is_mds(broken));
}

TEST_CASE("alphabet doubling of the k = 3 optimum") {
  const auto inst = singleton_instance();
  const auto base = solve(inst, Alphabet(3));
  REQUIRE(base.codebook.t == 7);
  const auto doubled = concat_double(base.codebook, inst);
  CHECK(doubled.codebook.alphabet_size == 6);
  CHECK(doubled.raw_t == 28);
  CHECK(doubled.codebook.t == 28);
  CHECK(verify_codebook(doubled.codebook, inst, Alphabet(6)).ok);
  const double bound = std::log(7.0 * 4.0) / std::log(6.0);
  CHECK(std::abs(rate_of(doubled.codebook.t, Alphabet(6)) - bound) < 1e-9);
  CHECK(std::abs(rate_of(28, Alphabet(6)) - 1.8597) < 1e-4);
}

TEST_CASE("general concatenation with p = 1 over GF(3)") {
  const auto inst = singleton_instance();
  const auto base = solve(inst, Alphabet(3));
  const auto out = concat_general(base.codebook, inst, 1, 3);
  CHECK(out.field_size == 3);
  CHECK(out.codebook.alphabet_size == 9);
  CHECK(out.codebook.t == 63);
  CHECK(verify_codebook(out.codebook, inst, Alphabet(9)).ok);
  CHECK(std::abs(rate_of(63, Alphabet(9)) - 1.8856) < 1e-4);
}

TEST_CASE("general concatenation with p = 2") {
  const auto inst = make_instance(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto base = solve(inst, Alphabet(2));
  const auto out = concat_general(base.codebook, inst, 2);
  CHECK(out.field_size == 3);
  CHECK(out.raw_t == base.codebook.t * 3);
  CHECK(out.codebook.t <= out.raw_t);
  CHECK(verify_codebook(out.codebook, inst, Alphabet(6)).ok);
  CHECK_THROWS_AS(concat_general(base.codebook, inst, 3), InputError);
}

TEST_CASE("concatenation needs side information") {
  const auto inst = chain_instance();
  const auto base = solve(inst, Alphabet(2));
  CHECK_THROWS_AS(concat_double(base.codebook, inst), InputError);
  const auto single = singleton_instance();
  const auto code = solve(single, Alphabet(2));
  CHECK_THROWS_AS(concat_general(code.codebook, single, 2), InputError);
}

TEST_CASE("concatenation rejects a broken input codebook") {
  const auto inst = singleton_instance();
  auto cb = solve(inst, Alphabet(2)).codebook;
  cb.decoders[0].entries[0].value ^= 1;
  CHECK_THROWS_AS(concat_double(cb, inst), InputError);
}

TEST_CASE("powers of the two-message XOR code keep rate 1") {
  const auto inst = make_instance(2, {{0}, {1}});
  const PrimeField f(2);
  const auto xor_code = linear_to_codebook(parse_encoder("1,1", f), inst, f);
  REQUIRE(xor_code.t == 2);
  for (int copies : {1, 2, 3}) {
    const auto cb = pliable_power(xor_code, inst, copies);
    const Alphabet k(1u << copies);
    CHECK(cb.alphabet_size == k.size());
    CHECK(cb.t == k.size());
    CHECK(cb.is_pliable());
    CHECK(verify_codebook(cb, inst, k).ok);
    CHECK(rate_of(cb.t, k) == 1.0);
  }
}

TEST_CASE("power of a pliable code on three messages") {
  const auto inst = singleton_instance();
  const PrimeField f(2);
  const auto code = linear_to_codebook(parse_encoder("1,1,0;0,1,1", f), inst, f);
  const auto sq = pliable_power(code, inst, 2);
  CHECK(sq.t == 16);
  CHECK(verify_codebook(sq, inst, Alphabet(4)).ok);
  CHECK_THROWS_AS(pliable_power(code, inst, 0), InputError);
  // The k = 3 optimum decodes different indices for different realisations.
  const auto vp = solve(inst, Alphabet(3)).codebook;
  CHECK_FALSE(vp.is_pliable());
  CHECK_THROWS_AS(pliable_power(vp, inst, 2), InputError);
}

TEST_CASE("naive component-wise product is rejected by the verifier") {
  const auto inst = singleton_instance();
  const auto first = solve(inst, Alphabet(3)).codebook;
  const auto second = solve(inst, Alphabet(2)).codebook;
  const auto product = naive_concat(first, second, inst);
  CHECK(product.alphabet_size == 6);
  CHECK(product.t == 28);
  const auto result = verify_codebook(product, inst, Alphabet(6));
  CHECK_FALSE(result.ok);
  CHECK_FALSE(result.message.empty());
}

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

// Code constructions: alphabet doubling with the binary XOR-chain code,
// concatenation with a prime-field MDS code, powers of pliable codes, and
// the naive component-wise product used as a counterexample.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vpic/core_model.hpp"
#include "vpic/linear_codes.hpp"

namespace vpic {

// (y_1 xor y_2, ..., y_{m-1} xor y_m).
std::vector<std::uint32_t> xor_chain_encode(std::span<const std::uint32_t> bits);
// Recovers all m bits from the chain outputs and one known bit.
std::vector<std::uint32_t> xor_chain_decode(std::span<const std::uint32_t> chain,
                                            int known_index,
                                            std::uint32_t known_bit);

// An (m, m-p) MDS code over GF(f): any p known coordinates together with the
// m-p outputs of `generator` determine all m coordinates.
struct MdsSpec {
  int m = 0;
  int p = 0;
  std::uint32_t field_size = 2;
  Matrix generator;  // (m-p) x m
};

// p = 1 uses the difference chain y_i - y_{i+1}, valid over every prime
// field (f = 2 by default). p >= 2 uses a Vandermonde matrix on the nodes
// 0..m-1, so f must be a prime >= m (the smallest one by default). The
// default is an upper bound on the minimum MDS field size, not the minimum.
MdsSpec make_mds(int m, int p, std::optional<std::uint32_t> field_size = {});
// Checks every p-subset of known coordinates by rank.
bool is_mds(const MdsSpec& spec);

struct ConcatResult {
  VPCodebook codebook;
  std::uint64_t raw_t = 0;  // t * f^{m-p}, before dropping empty fibers
  std::uint32_t field_size = 2;
};

// Views [0:2k-1] as [0:k-1] x {0,1} with value = 2*a + bit. Every receiver
// must know at least one message.
ConcatResult concat_double(const VPCodebook& cb, const ProblemInstance& inst);

// Views [0:kf-1] as [0:k-1] x [0:f-1] with value = f*a + b. Every receiver
// must know at least p >= 1 messages.
ConcatResult concat_general(const VPCodebook& cb, const ProblemInstance& inst,
                            int p, std::optional<std::uint32_t> field_size = {});

// l-fold product of a pliable code: alphabet k^l, t^l codewords, the most
// significant base-k digit of each message handled by the first copy.
VPCodebook pliable_power(const VPCodebook& cb, const ProblemInstance& inst,
                         int copies);

// Component-wise product of two VP codes where each layer decodes whatever
// index its own decoder picks. Generally not a valid VP code.
VPCodebook naive_concat(const VPCodebook& first, const VPCodebook& second,
                        const ProblemInstance& inst);

}  // namespace vpic

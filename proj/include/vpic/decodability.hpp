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

// Decodability oracle: whether a set of realisations can share a codeword
// so that every receiver still decodes some new message, plus decoder
// extraction and whole-codebook verification.

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vpic/core_model.hpp"

namespace vpic {

// Vertex ids, ascending and distinct.
using Hyperedge = std::vector<VertexId>;

struct SliceWitness {
  MessageMask receiver = 0;
  std::vector<std::uint32_t> side_info;
  int index = 0;  // 0-based
  std::uint32_t value = 0;
  friend bool operator==(const SliceWitness&, const SliceWitness&) = default;
};

struct SliceFailure {
  MessageMask receiver = 0;
  std::vector<std::uint32_t> side_info;
  std::string reason;
  Json to_json() const;
};

// Per-receiver masks of message indices a receiver may decode. Empty means
// "anything outside H"; a single bit per receiver gives the pliable oracle.
using DecodeChoices = std::vector<MessageMask>;

// Incremental validity bookkeeping for one growing fiber. Each (receiver,
// side-information value) slice keeps the mask of candidate coordinates that
// are still constant across its members. Single-owner mutable state.
class FiberOracle {
 public:
  FiberOracle(const VertexSpace& space, const ProblemInstance& inst,
              DecodeChoices choices = {});

  bool can_add(VertexId v) const;
  void add(VertexId v);
  // Undoes the most recent add().
  void pop();
  std::size_t size() const { return members_.size(); }
  std::span<const VertexId> members() const { return members_; }
  const VertexSpace& space() const { return *space_; }

 private:
  struct Slice {
    MessageMask mask = 0;
    std::uint32_t count = 0;
    VertexId rep = 0;
  };
  struct Store {
    std::vector<Slice> dense;
    std::unordered_map<std::uint64_t, Slice> sparse;
  };

  std::uint64_t key(std::size_t h, VertexId v) const;
  const Slice* find(std::size_t h, std::uint64_t key) const;
  Slice& slot(std::size_t h, std::uint64_t key);
  MessageMask agree(VertexId a, VertexId b, MessageMask mask) const;

  const VertexSpace* space_;
  std::vector<MessageMask> receivers_;
  std::vector<MessageMask> allowed_;
  std::vector<std::vector<std::uint32_t>> keys_;
  std::vector<Store> stores_;
  std::vector<VertexId> members_;
  std::vector<Slice> undo_;
};

DecodeChoices default_choices(const ProblemInstance& inst);

std::optional<SliceFailure> find_violation(std::span<const VertexId> members,
                                           const ProblemInstance& inst,
                                           const VertexSpace& space,
                                           const DecodeChoices& choices = {});

bool is_valid_fiber(std::span<const VertexId> members,
                    const ProblemInstance& inst, const Alphabet& k);
bool is_valid_fiber(std::span<const VertexId> members,
                    const ProblemInstance& inst, const VertexSpace& space,
                    const DecodeChoices& choices = {});

struct WitnessResult {
  std::vector<SliceWitness> witnesses;  // receiver order, then side_info
  std::optional<SliceFailure> failure;
  bool ok() const { return !failure.has_value(); }
};

// One witness per occurring (receiver, x_H) slice, using the smallest
// qualifying message index.
WitnessResult slice_witnesses(std::span<const VertexId> members,
                              const ProblemInstance& inst, const Alphabet& k);
WitnessResult slice_witnesses(std::span<const VertexId> members,
                              const ProblemInstance& inst,
                              const VertexSpace& space,
                              const DecodeChoices& choices = {});

// Throws InputError if `members` is not itself a valid fiber.
bool is_maximal_fiber(std::span<const VertexId> members,
                      const ProblemInstance& inst, const Alphabet& k);
bool is_maximal_fiber(std::span<const VertexId> members,
                      const ProblemInstance& inst, const VertexSpace& space,
                      const DecodeChoices& choices = {});

struct VerifyResult {
  bool ok = true;
  std::string message;
  std::optional<std::uint32_t> codeword;
  std::optional<SliceFailure> slice;
  Json diagnostics() const;
};

// Throws InputError when the codebook is structurally malformed.
VerifyResult verify_codebook(const VPCodebook& cb, const ProblemInstance& inst,
                             const Alphabet& k);

// Decoder tables derived from the witnesses of each fiber. Every fiber must
// be valid under `choices`.
std::vector<ReceiverDecoder> derive_decoders(const VPCodebook& cb,
                                             const ProblemInstance& inst,
                                             const VertexSpace& space,
                                             const DecodeChoices& choices = {});

}  // namespace vpic

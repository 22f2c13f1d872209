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

// Shared data model: problem instances, realisations and their canonical
// ordering, VP codebooks, and the JSON formats for instances and codebooks.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vpic {

using VertexId = std::uint32_t;
// Bit i set means message i (0-based) is in the set.
using MessageMask = std::uint32_t;
using Realisation = std::vector<std::uint32_t>;
using Json = nlohmann::ordered_json;

inline constexpr int kMaxMessages = 32;
// Exact solving keeps dense vertex tables, so k^m is capped here.
inline constexpr std::uint64_t kExactSolveLimit = std::uint64_t{1} << 24;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Alphabet {
 public:
  explicit Alphabet(std::uint32_t size);
  std::uint32_t size() const { return size_; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::uint32_t size_;
};

int popcount(MessageMask mask);
// Ascending 0-based message indices contained in `mask`.
std::vector<int> mask_indices(MessageMask mask);
MessageMask indices_mask(std::span<const int> indices);

// A problem instance (m, U). Receivers are kept in canonical order: by their
// ascending index lists compared lexicographically, so the empty set first.
class ProblemInstance {
 public:
  ProblemInstance(int message_count, std::vector<MessageMask> receivers);

  int message_count() const { return message_count_; }
  MessageMask full_mask() const;
  std::span<const MessageMask> receivers() const { return receivers_; }
  std::size_t receiver_count() const { return receivers_.size(); }
  bool has_receiver(MessageMask receiver) const;

  friend bool operator==(const ProblemInstance&,
                         const ProblemInstance&) = default;

 private:
  int message_count_;
  std::vector<MessageMask> receivers_;
};

bool receiver_less(MessageMask a, MessageMask b);

// k^m, or throws CapacityError if it overflows 64 bits.
std::uint64_t realisation_count(int message_count, const Alphabet& k);
void require_exact_size(int message_count, const Alphabet& k);

// Lexicographic rank with values[0] most significant.
std::uint64_t canonical_index(std::span<const std::uint32_t> values,
                              const Alphabet& k, int message_count);
Realisation realisation_at(std::uint64_t index, const Alphabet& k,
                           int message_count);

// Dense view of [0:k-1]^m for exact computations.
class VertexSpace {
 public:
  VertexSpace(int message_count, const Alphabet& k);

  int message_count() const { return message_count_; }
  std::uint32_t alphabet_size() const { return k_; }
  VertexId size() const { return size_; }

  std::uint32_t digit(VertexId v, int i) const {
    if (!digits_.empty()) return digits_[std::size_t{v} * message_count_ + i];
    return (v / place_[i]) % k_;
  }
  Realisation realisation(VertexId v) const;
  VertexId index_of(std::span<const std::uint32_t> values) const;
  // Rank of x_H among [0:k-1]^{|H|}, lowest member of H most significant.
  std::uint64_t side_key(VertexId v, MessageMask receiver) const;
  std::vector<std::uint32_t> side_values(VertexId v,
                                         MessageMask receiver) const;

 private:
  int message_count_;
  std::uint32_t k_;
  VertexId size_;
  std::vector<VertexId> place_;
  std::vector<std::uint8_t> digits_;
};

double rate_of(std::uint64_t t, const Alphabet& k);
// Rounded to the four decimals used in reports.
double round_rate(double rate);

struct ParsedInstance {
  ProblemInstance instance;
  Alphabet alphabet;
};

ParsedInstance parse_instance(std::string_view text);
ParsedInstance instance_from_json(const Json& doc);
Json instance_to_json(const ProblemInstance& inst, const Alphabet& k);

struct DecoderEntry {
  std::uint32_t codeword = 0;
  std::uint64_t side_key = 0;
  int index = 0;  // 0-based message index
  std::uint32_t value = 0;
  friend bool operator==(const DecoderEntry&, const DecoderEntry&) = default;
};

struct ReceiverDecoder {
  MessageMask receiver = 0;
  // Sorted by (codeword, side_key), keys unique.
  std::vector<DecoderEntry> entries;

  const DecoderEntry* find(std::uint32_t codeword,
                           std::uint64_t side_key) const;
  friend bool operator==(const ReceiverDecoder&,
                         const ReceiverDecoder&) = default;
};

// Encoder as a total map realisation -> codeword id, plus per-receiver
// decoding tables (the I_H and G_H pair).
struct VPCodebook {
  int message_count = 0;
  std::uint32_t alphabet_size = 2;
  std::uint32_t t = 0;
  std::vector<std::uint32_t> assignment;  // indexed by canonical vertex id
  std::vector<ReceiverDecoder> decoders;

  Alphabet alphabet() const { return Alphabet(alphabet_size); }
  const ReceiverDecoder* decoder_for(MessageMask receiver) const;
  // Fibers in id order, each listing vertex ids ascending.
  std::vector<std::vector<VertexId>> fibers() const;
  // Throws InputError unless the assignment is total over k^m vertices and
  // every id in [0:t-1] has a nonempty fiber.
  void check_structure() const;
  // True when every receiver decodes one fixed message index.
  bool is_pliable() const;

  friend bool operator==(const VPCodebook&, const VPCodebook&) = default;
};

// Renumbers codeword ids to 0..t-1 in order of the raw ids, dropping ids
// with empty fibers. Decoder entries must be rebuilt by the caller.
std::uint32_t compact_assignment(std::vector<std::uint64_t> const& raw,
                                 std::vector<std::uint32_t>& out);

Json codebook_to_json(const VPCodebook& cb);
VPCodebook codebook_from_json(const Json& doc);
VPCodebook parse_codebook(std::string_view text);
// Receivers named by the codebook's decoders.
ProblemInstance instance_of_codebook(const VPCodebook& cb);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace vpic

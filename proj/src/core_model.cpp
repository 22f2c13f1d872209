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

#include "vpic/core_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace vpic {

Alphabet::Alphabet(std::uint32_t size) : size_(size) {
  if (size < 2) {
    throw InputError("alphabet size k must be at least 2, got " +
                     std::to_string(size));
  }
}

int popcount(MessageMask mask) { return std::popcount(mask); }

std::vector<int> mask_indices(MessageMask mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

MessageMask indices_mask(std::span<const int> indices) {
  MessageMask mask = 0;
  for (int i : indices) mask |= MessageMask{1} << i;
  return mask;
}

bool receiver_less(MessageMask a, MessageMask b) {
  const auto ia = mask_indices(a);
  const auto ib = mask_indices(b);
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(),
                                      ib.end());
}

ProblemInstance::ProblemInstance(int message_count,
                                 std::vector<MessageMask> receivers)
    : message_count_(message_count), receivers_(std::move(receivers)) {
  if (message_count_ < 1 || message_count_ > kMaxMessages) {
    throw InputError("message count m must be in [1:" +
                     std::to_string(kMaxMessages) + "], got " +
                     std::to_string(message_count_));
  }
  if (receivers_.empty()) throw InputError("instance has no receivers");
  const MessageMask full = full_mask();
  for (MessageMask h : receivers_) {
    if ((h & ~full) != 0) {
      throw InputError("receiver references a message outside [1:m]");
    }
    if (h == full) {
      throw InputError(
          "no receiver has side information H = [1:m] (such a receiver "
          "cannot decode a new message)");
    }
  }
  std::sort(receivers_.begin(), receivers_.end(), receiver_less);
  if (std::adjacent_find(receivers_.begin(), receivers_.end()) !=
      receivers_.end()) {
    throw InputError("duplicate receiver side-information set");
  }
}

MessageMask ProblemInstance::full_mask() const {
  return message_count_ == 32 ? ~MessageMask{0}
                              : (MessageMask{1} << message_count_) - 1;
}

bool ProblemInstance::has_receiver(MessageMask receiver) const {
  return std::find(receivers_.begin(), receivers_.end(), receiver) !=
         receivers_.end();
}

std::uint64_t realisation_count(int message_count, const Alphabet& k) {
  std::uint64_t n = 1;
  for (int i = 0; i < message_count; ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / k.size()) {
      throw CapacityError("k^m overflows 64-bit counters");
    }
    n *= k.size();
  }
  return n;
}

void require_exact_size(int message_count, const Alphabet& k) {
  std::uint64_t n = 0;
  try {
    n = realisation_count(message_count, k);
  } catch (const CapacityError&) {
    n = kExactSolveLimit + 1;
  }
  if (n > kExactSolveLimit) {
    throw CapacityError("k^m = " + std::to_string(k.size()) + "^" +
                        std::to_string(message_count) +
                        " exceeds the exact-solving limit 2^24");
  }
}

std::uint64_t canonical_index(std::span<const std::uint32_t> values,
                              const Alphabet& k, int message_count) {
  if (static_cast<int>(values.size()) != message_count) {
    throw InputError("realisation has length " +
                     std::to_string(values.size()) + ", expected " +
                     std::to_string(message_count));
  }
  realisation_count(message_count, k);
  std::uint64_t index = 0;
  for (std::uint32_t x : values) {
    if (x >= k.size()) {
      throw InputError("realisation entry " + std::to_string(x) +
                       " outside [0:" + std::to_string(k.size() - 1) + "]");
    }
    index = index * k.size() + x;
  }
  return index;
}

Realisation realisation_at(std::uint64_t index, const Alphabet& k,
                           int message_count) {
  if (index >= realisation_count(message_count, k)) {
    throw InputError("realisation index out of range");
  }
  Realisation r(message_count);
  for (int i = message_count - 1; i >= 0; --i) {
    r[i] = static_cast<std::uint32_t>(index % k.size());
    index /= k.size();
  }
  return r;
}

VertexSpace::VertexSpace(int message_count, const Alphabet& k)
    : message_count_(message_count), k_(k.size()) {
  require_exact_size(message_count, k);
  size_ = static_cast<VertexId>(realisation_count(message_count, k));
  place_.assign(message_count, 1);
  for (int i = message_count - 2; i >= 0; --i) {
    place_[i] = place_[i + 1] * k_;
  }
  const std::uint64_t cells = std::uint64_t{size_} * message_count;
  if (k_ <= 256 && cells <= (std::uint64_t{1} << 27)) {
    digits_.resize(cells);
    for (VertexId v = 0; v < size_; ++v) {
      for (int i = 0; i < message_count; ++i) {
        digits_[std::size_t{v} * message_count + i] =
            static_cast<std::uint8_t>((v / place_[i]) % k_);
      }
    }
  }
}

Realisation VertexSpace::realisation(VertexId v) const {
  Realisation r(message_count_);
  for (int i = 0; i < message_count_; ++i) r[i] = digit(v, i);
  return r;
}

VertexId VertexSpace::index_of(std::span<const std::uint32_t> values) const {
  return static_cast<VertexId>(
      canonical_index(values, Alphabet(k_), message_count_));
}

std::uint64_t VertexSpace::side_key(VertexId v, MessageMask receiver) const {
  std::uint64_t key = 0;
  for (int i = 0; i < message_count_; ++i) {
    if (receiver >> i & 1u) key = key * k_ + digit(v, i);
  }
  return key;
}

std::vector<std::uint32_t> VertexSpace::side_values(
    VertexId v, MessageMask receiver) const {
  std::vector<std::uint32_t> out;
  for (int i = 0; i < message_count_; ++i) {
    if (receiver >> i & 1u) out.push_back(digit(v, i));
  }
  return out;
}

double rate_of(std::uint64_t t, const Alphabet& k) {
  if (t < 1) throw InputError("codeword count t must be positive");
  if (t == k.size()) return 1.0;
  return std::log(static_cast<double>(t)) /
         std::log(static_cast<double>(k.size()));
}

double round_rate(double rate) { return std::round(rate * 1e4) / 1e4; }

namespace {

std::uint32_t json_uint(const Json& v, const char* what) {
  if (!v.is_number_integer()) {
    throw InputError(std::string(what) + " must be an integer");
  }
  const auto x = v.get<std::int64_t>();
  if (x < 0 || x > std::numeric_limits<std::uint32_t>::max()) {
    throw InputError(std::string(what) + " out of range");
  }
  return static_cast<std::uint32_t>(x);
}

MessageMask receiver_from_json(const Json& arr, int m) {
  if (!arr.is_array()) throw InputError("receiver must be an index array");
  MessageMask mask = 0;
  for (const auto& e : arr) {
    const auto i = json_uint(e, "receiver index");
    if (i < 1 || static_cast<int>(i) > m) {
      throw InputError("receiver index " + std::to_string(i) +
                       " outside [1:" + std::to_string(m) + "]");
    }
    const MessageMask bit = MessageMask{1} << (i - 1);
    if (mask & bit) throw InputError("receiver lists an index twice");
    mask |= bit;
  }
  return mask;
}

Json receiver_to_json(MessageMask h) {
  Json arr = Json::array();
  for (int i : mask_indices(h)) arr.push_back(i + 1);
  return arr;
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

ParsedInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  for (const char* key : {"m", "k", "receivers"}) {
    if (!doc.contains(key)) {
      throw InputError(std::string("instance is missing \"") + key + "\"");
    }
  }
  const auto m = json_uint(doc["m"], "m");
  if (m < 1 || m > kMaxMessages) {
    throw InputError("m must be in [1:" + std::to_string(kMaxMessages) + "]");
  }
  Alphabet k(json_uint(doc["k"], "k"));
  if (!doc["receivers"].is_array()) {
    throw InputError("receivers must be an array");
  }
  std::vector<MessageMask> receivers;
  for (const auto& r : doc["receivers"]) {
    receivers.push_back(receiver_from_json(r, static_cast<int>(m)));
  }
  return ParsedInstance{ProblemInstance(static_cast<int>(m), receivers), k};
}

ParsedInstance parse_instance(std::string_view text) {
  return instance_from_json(parse_json_text(text));
}

Json instance_to_json(const ProblemInstance& inst, const Alphabet& k) {
  Json receivers = Json::array();
  for (MessageMask h : inst.receivers()) {
    receivers.push_back(receiver_to_json(h));
  }
  Json doc;
  doc["m"] = inst.message_count();
  doc["k"] = k.size();
  doc["receivers"] = std::move(receivers);
  return doc;
}

const DecoderEntry* ReceiverDecoder::find(std::uint32_t codeword,
                                          std::uint64_t side_key) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), std::pair{codeword, side_key},
      [](const DecoderEntry& e, const std::pair<std::uint32_t, std::uint64_t>& key) {
        return std::pair{e.codeword, e.side_key} < key;
      });
  if (it == entries.end() || it->codeword != codeword ||
      it->side_key != side_key) {
    return nullptr;
  }
  return &*it;
}

const ReceiverDecoder* VPCodebook::decoder_for(MessageMask receiver) const {
  for (const auto& d : decoders) {
    if (d.receiver == receiver) return &d;
  }
  return nullptr;
}

std::vector<std::vector<VertexId>> VPCodebook::fibers() const {
  std::vector<std::vector<VertexId>> out(t);
  for (VertexId v = 0; v < assignment.size(); ++v) {
    if (assignment[v] < t) out[assignment[v]].push_back(v);
  }
  return out;
}

void VPCodebook::check_structure() const {
  const Alphabet k(alphabet_size);
  const auto n = realisation_count(message_count, k);
  if (assignment.size() != n) {
    throw InputError("assignment covers " + std::to_string(assignment.size()) +
                     " realisations, expected k^m = " + std::to_string(n));
  }
  if (t == 0) throw InputError("codebook has no codewords");
  std::vector<bool> used(t, false);
  for (std::uint32_t c : assignment) {
    if (c >= t) {
      throw InputError("codeword id " + std::to_string(c) +
                       " outside [0:t-1]");
    }
    used[c] = true;
  }
  for (std::uint32_t c = 0; c < t; ++c) {
    if (!used[c]) {
      throw InputError("codeword " + std::to_string(c) + " has an empty fiber");
    }
  }
}

bool VPCodebook::is_pliable() const {
  for (const auto& d : decoders) {
    for (const auto& e : d.entries) {
      if (e.index != d.entries.front().index) return false;
    }
  }
  return true;
}

std::uint32_t compact_assignment(std::vector<std::uint64_t> const& raw,
                                 std::vector<std::uint32_t>& out) {
  std::vector<std::uint64_t> ids(raw);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  out.resize(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    out[v] = static_cast<std::uint32_t>(
        std::lower_bound(ids.begin(), ids.end(), raw[v]) - ids.begin());
  }
  return static_cast<std::uint32_t>(ids.size());
}

Json codebook_to_json(const VPCodebook& cb) {
  const Alphabet k(cb.alphabet_size);
  Json codewords = Json::array();
  const auto fibers = cb.fibers();
  for (std::uint32_t c = 0; c < cb.t; ++c) {
    Json reals = Json::array();
    for (VertexId v : fibers[c]) {
      reals.push_back(realisation_at(v, k, cb.message_count));
    }
    Json cw;
    cw["id"] = c;
    cw["realisations"] = std::move(reals);
    codewords.push_back(std::move(cw));
  }
  Json decoders = Json::array();
  for (const auto& d : cb.decoders) {
    const int width = popcount(d.receiver);
    Json entries = Json::array();
    for (const auto& e : d.entries) {
      Json je;
      je["codeword"] = e.codeword;
      je["side_info"] = realisation_at(e.side_key, k, width);
      je["index"] = e.index + 1;
      je["value"] = e.value;
      entries.push_back(std::move(je));
    }
    Json jd;
    jd["receiver"] = receiver_to_json(d.receiver);
    jd["entries"] = std::move(entries);
    decoders.push_back(std::move(jd));
  }
  Json doc;
  doc["m"] = cb.message_count;
  doc["k"] = cb.alphabet_size;
  doc["t"] = cb.t;
  doc["codewords"] = std::move(codewords);
  doc["decoders"] = std::move(decoders);
  return doc;
}

VPCodebook codebook_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("codebook must be a JSON object");
  for (const char* key : {"m", "k", "t", "codewords", "decoders"}) {
    if (!doc.contains(key)) {
      throw InputError(std::string("codebook is missing \"") + key + "\"");
    }
  }
  VPCodebook cb;
  cb.message_count = static_cast<int>(json_uint(doc["m"], "m"));
  if (cb.message_count < 1 || cb.message_count > kMaxMessages) {
    throw InputError("codebook m out of range");
  }
  const Alphabet k(json_uint(doc["k"], "k"));
  cb.alphabet_size = k.size();
  cb.t = json_uint(doc["t"], "t");
  require_exact_size(cb.message_count, k);
  const auto n = realisation_count(cb.message_count, k);
  constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();
  cb.assignment.assign(n, kUnassigned);
  if (!doc["codewords"].is_array()) {
    throw InputError("codewords must be an array");
  }
  for (const auto& cw : doc["codewords"]) {
    const auto id = json_uint(cw.at("id"), "codeword id");
    if (id >= cb.t) throw InputError("codeword id outside [0:t-1]");
    for (const auto& r : cw.at("realisations")) {
      if (!r.is_array()) throw InputError("realisation must be an array");
      std::vector<std::uint32_t> values;
      for (const auto& x : r) values.push_back(json_uint(x, "message value"));
      const auto v = canonical_index(values, k, cb.message_count);
      if (cb.assignment[v] != kUnassigned) {
        throw InputError("realisation assigned to more than one codeword");
      }
      cb.assignment[v] = id;
    }
  }
  for (std::uint32_t c : cb.assignment) {
    if (c == kUnassigned) {
      throw InputError("assignment is not total over [0:k-1]^m");
    }
  }
  if (!doc["decoders"].is_array()) throw InputError("decoders must be an array");
  for (const auto& jd : doc["decoders"]) {
    ReceiverDecoder d;
    d.receiver = receiver_from_json(jd.at("receiver"), cb.message_count);
    const int width = popcount(d.receiver);
    for (const auto& je : jd.at("entries")) {
      DecoderEntry e;
      e.codeword = json_uint(je.at("codeword"), "decoder codeword");
      std::vector<std::uint32_t> side;
      for (const auto& x : je.at("side_info")) {
        side.push_back(json_uint(x, "side-information value"));
      }
      e.side_key = canonical_index(side, k, width);
      const auto index = json_uint(je.at("index"), "decoder index");
      if (index < 1 || static_cast<int>(index) > cb.message_count) {
        throw InputError("decoder index outside [1:m]");
      }
      e.index = static_cast<int>(index) - 1;
      e.value = json_uint(je.at("value"), "decoder value");
      d.entries.push_back(e);
    }
    std::sort(d.entries.begin(), d.entries.end(),
              [](const DecoderEntry& a, const DecoderEntry& b) {
                return std::pair{a.codeword, a.side_key} <
                       std::pair{b.codeword, b.side_key};
              });
    for (std::size_t i = 1; i < d.entries.size(); ++i) {
      if (d.entries[i].codeword == d.entries[i - 1].codeword &&
          d.entries[i].side_key == d.entries[i - 1].side_key) {
        throw InputError("duplicate decoder entry");
      }
    }
    cb.decoders.push_back(std::move(d));
  }
  cb.check_structure();
  return cb;
}

VPCodebook parse_codebook(std::string_view text) {
  return codebook_from_json(parse_json_text(text));
}

ProblemInstance instance_of_codebook(const VPCodebook& cb) {
  std::vector<MessageMask> receivers;
  for (const auto& d : cb.decoders) receivers.push_back(d.receiver);
  return ProblemInstance(cb.message_count, std::move(receivers));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace vpic

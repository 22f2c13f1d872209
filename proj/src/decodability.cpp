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

#include "vpic/decodability.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace vpic {
namespace {

constexpr std::uint64_t kDenseSliceLimit = std::uint64_t{1} << 20;
constexpr std::uint64_t kKeyTableLimit = std::uint64_t{1} << 25;

std::uint64_t side_count(std::uint32_t k, int width) {
  std::uint64_t n = 1;
  for (int i = 0; i < width; ++i) n *= k;
  return n;
}

Json indices_json(MessageMask mask) {
  Json arr = Json::array();
  for (int i : mask_indices(mask)) arr.push_back(i + 1);
  return arr;
}

struct SliceAcc {
  MessageMask mask = 0;
  VertexId rep = 0;
};

// Slices of one receiver over `members`, keyed by side-information rank.
std::map<std::uint64_t, SliceAcc> slices_of(std::span<const VertexId> members,
                                            MessageMask receiver,
                                            MessageMask allowed,
                                            const VertexSpace& space) {
  std::map<std::uint64_t, SliceAcc> out;
  const int m = space.message_count();
  for (VertexId v : members) {
    auto [it, fresh] = out.try_emplace(space.side_key(v, receiver));
    if (fresh) {
      it->second = SliceAcc{allowed, v};
      continue;
    }
    MessageMask mask = it->second.mask;
    for (int i = 0; i < m; ++i) {
      if ((mask >> i & 1u) && space.digit(v, i) != space.digit(it->second.rep, i)) {
        mask &= ~(MessageMask{1} << i);
      }
    }
    it->second.mask = mask;
  }
  return out;
}

std::vector<MessageMask> resolve_choices(const ProblemInstance& inst,
                                         const DecodeChoices& choices) {
  const auto receivers = inst.receivers();
  if (choices.empty()) return default_choices(inst);
  if (choices.size() != receivers.size()) {
    throw InputError("decode choices must list one mask per receiver");
  }
  std::vector<MessageMask> out(choices.size());
  for (std::size_t h = 0; h < receivers.size(); ++h) {
    out[h] = choices[h] & ~receivers[h] & inst.full_mask();
    if (out[h] == 0) {
      throw InputError("decode choice for a receiver must name a message "
                       "outside its side information");
    }
  }
  return out;
}

}  // namespace

Json SliceFailure::to_json() const {
  Json doc;
  doc["receiver"] = indices_json(receiver);
  doc["side_info"] = side_info;
  doc["reason"] = reason;
  return doc;
}

DecodeChoices default_choices(const ProblemInstance& inst) {
  DecodeChoices out;
  for (MessageMask h : inst.receivers()) out.push_back(inst.full_mask() & ~h);
  return out;
}

FiberOracle::FiberOracle(const VertexSpace& space, const ProblemInstance& inst,
                         DecodeChoices choices)
    : space_(&space),
      receivers_(inst.receivers().begin(), inst.receivers().end()),
      allowed_(resolve_choices(inst, choices)) {
  if (space.message_count() != inst.message_count()) {
    throw InputError("vertex space and instance disagree on m");
  }
  const std::size_t n = receivers_.size();
  stores_.resize(n);
  keys_.resize(n);
  const bool tabulate = std::uint64_t{space.size()} * n <= kKeyTableLimit;
  for (std::size_t h = 0; h < n; ++h) {
    const auto width = popcount(receivers_[h]);
    const auto count = side_count(space.alphabet_size(), width);
    if (count <= kDenseSliceLimit) stores_[h].dense.resize(count);
    if (tabulate) {
      keys_[h].resize(space.size());
      for (VertexId v = 0; v < space.size(); ++v) {
        keys_[h][v] = static_cast<std::uint32_t>(space.side_key(v, receivers_[h]));
      }
    }
  }
}

std::uint64_t FiberOracle::key(std::size_t h, VertexId v) const {
  if (!keys_[h].empty()) return keys_[h][v];
  return space_->side_key(v, receivers_[h]);
}

const FiberOracle::Slice* FiberOracle::find(std::size_t h,
                                            std::uint64_t key) const {
  const Store& s = stores_[h];
  if (!s.dense.empty()) return &s.dense[key];
  auto it = s.sparse.find(key);
  return it == s.sparse.end() ? nullptr : &it->second;
}

FiberOracle::Slice& FiberOracle::slot(std::size_t h, std::uint64_t key) {
  Store& s = stores_[h];
  if (!s.dense.empty()) return s.dense[key];
  return s.sparse[key];
}

MessageMask FiberOracle::agree(VertexId a, VertexId b, MessageMask mask) const {
  MessageMask out = mask;
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    mask &= mask - 1;
    if (space_->digit(a, i) != space_->digit(b, i)) {
      out &= ~(MessageMask{1} << i);
    }
  }
  return out;
}

bool FiberOracle::can_add(VertexId v) const {
  for (std::size_t h = 0; h < receivers_.size(); ++h) {
    const Slice* s = find(h, key(h, v));
    if (s == nullptr || s->count == 0) continue;
    if (agree(v, s->rep, s->mask) == 0) return false;
  }
  return true;
}

void FiberOracle::add(VertexId v) {
  for (std::size_t h = 0; h < receivers_.size(); ++h) {
    Slice& s = slot(h, key(h, v));
    undo_.push_back(s);
    if (s.count == 0) {
      s.mask = allowed_[h];
      s.rep = v;
    } else {
      s.mask = agree(v, s.rep, s.mask);
    }
    ++s.count;
  }
  members_.push_back(v);
}

void FiberOracle::pop() {
  const VertexId v = members_.back();
  members_.pop_back();
  for (std::size_t h = receivers_.size(); h-- > 0;) {
    slot(h, key(h, v)) = undo_.back();
    undo_.pop_back();
  }
}

std::optional<SliceFailure> find_violation(std::span<const VertexId> members,
                                           const ProblemInstance& inst,
                                           const VertexSpace& space,
                                           const DecodeChoices& choices) {
  const auto allowed = resolve_choices(inst, choices);
  const auto receivers = inst.receivers();
  for (std::size_t h = 0; h < receivers.size(); ++h) {
    for (const auto& [key, acc] :
         slices_of(members, receivers[h], allowed[h], space)) {
      if (acc.mask == 0) {
        return SliceFailure{receivers[h],
                            space.side_values(acc.rep, receivers[h]),
                            "no constant coordinate"};
      }
    }
  }
  return std::nullopt;
}

bool is_valid_fiber(std::span<const VertexId> members,
                    const ProblemInstance& inst, const VertexSpace& space,
                    const DecodeChoices& choices) {
  return !find_violation(members, inst, space, choices).has_value();
}

bool is_valid_fiber(std::span<const VertexId> members,
                    const ProblemInstance& inst, const Alphabet& k) {
  const VertexSpace space(inst.message_count(), k);
  return is_valid_fiber(members, inst, space);
}

WitnessResult slice_witnesses(std::span<const VertexId> members,
                              const ProblemInstance& inst,
                              const VertexSpace& space,
                              const DecodeChoices& choices) {
  const auto allowed = resolve_choices(inst, choices);
  const auto receivers = inst.receivers();
  WitnessResult result;
  for (std::size_t h = 0; h < receivers.size(); ++h) {
    for (const auto& [key, acc] :
         slices_of(members, receivers[h], allowed[h], space)) {
      auto side = space.side_values(acc.rep, receivers[h]);
      if (acc.mask == 0) {
        result.witnesses.clear();
        result.failure =
            SliceFailure{receivers[h], std::move(side), "no constant coordinate"};
        return result;
      }
      const int index = std::countr_zero(acc.mask);
      result.witnesses.push_back(SliceWitness{
          receivers[h], std::move(side), index, space.digit(acc.rep, index)});
    }
  }
  return result;
}

WitnessResult slice_witnesses(std::span<const VertexId> members,
                              const ProblemInstance& inst, const Alphabet& k) {
  const VertexSpace space(inst.message_count(), k);
  return slice_witnesses(members, inst, space);
}

bool is_maximal_fiber(std::span<const VertexId> members,
                      const ProblemInstance& inst, const VertexSpace& space,
                      const DecodeChoices& choices) {
  FiberOracle oracle(space, inst, choices);
  std::vector<bool> inside(space.size(), false);
  for (VertexId v : members) {
    if (v >= space.size()) throw InputError("vertex id out of range");
    if (inside[v] || !oracle.can_add(v)) {
      throw InputError("is_maximal_fiber requires a valid fiber");
    }
    oracle.add(v);
    inside[v] = true;
  }
  for (VertexId v = 0; v < space.size(); ++v) {
    if (!inside[v] && oracle.can_add(v)) return false;
  }
  return true;
}

bool is_maximal_fiber(std::span<const VertexId> members,
                      const ProblemInstance& inst, const Alphabet& k) {
  const VertexSpace space(inst.message_count(), k);
  return is_maximal_fiber(members, inst, space);
}

Json VerifyResult::diagnostics() const {
  Json doc;
  doc["ok"] = ok;
  if (!message.empty()) doc["message"] = message;
  if (codeword) doc["codeword"] = *codeword;
  if (slice) {
    const Json s = slice->to_json();
    doc["receiver"] = s["receiver"];
    doc["side_info"] = s["side_info"];
    doc["reason"] = s["reason"];
  }
  return doc;
}

VerifyResult verify_codebook(const VPCodebook& cb, const ProblemInstance& inst,
                             const Alphabet& k) {
  VerifyResult result;
  auto fail = [&result](std::string message) {
    result.ok = false;
    result.message = std::move(message);
    return result;
  };
  if (cb.message_count != inst.message_count() || cb.alphabet_size != k.size()) {
    return fail("codebook is for m=" + std::to_string(cb.message_count) +
                ", k=" + std::to_string(cb.alphabet_size) +
                " but the instance has m=" +
                std::to_string(inst.message_count()) +
                ", k=" + std::to_string(k.size()));
  }
  cb.check_structure();
  const VertexSpace space(inst.message_count(), k);
  const auto fibers = cb.fibers();
  for (std::uint32_t c = 0; c < cb.t; ++c) {
    if (auto bad = find_violation(fibers[c], inst, space)) {
      result.codeword = c;
      result.slice = std::move(*bad);
      return fail("fiber of codeword " + std::to_string(c) +
                  " is not decodable");
    }
  }
  for (MessageMask h : inst.receivers()) {
    const ReceiverDecoder* dec = cb.decoder_for(h);
    if (dec == nullptr) {
      result.slice = SliceFailure{h, {}, "missing decoder"};
      return fail("no decoder for a receiver of the instance");
    }
    for (VertexId v = 0; v < space.size(); ++v) {
      const std::uint32_t c = cb.assignment[v];
      const DecoderEntry* e = dec->find(c, space.side_key(v, h));
      std::string reason;
      if (e == nullptr) {
        reason = "missing decoder entry";
      } else if (h >> e->index & 1u) {
        reason = "decoded index is already known";
      } else if (space.digit(v, e->index) != e->value) {
        reason = "decoded value disagrees with the slice";
      }
      if (!reason.empty()) {
        result.codeword = c;
        result.slice = SliceFailure{h, space.side_values(v, h), reason};
        return fail("decoder check failed for codeword " + std::to_string(c));
      }
    }
  }
  return result;
}

std::vector<ReceiverDecoder> derive_decoders(const VPCodebook& cb,
                                             const ProblemInstance& inst,
                                             const VertexSpace& space,
                                             const DecodeChoices& choices) {
  const auto allowed = resolve_choices(inst, choices);
  const auto receivers = inst.receivers();
  std::vector<ReceiverDecoder> out(receivers.size());
  for (std::size_t h = 0; h < receivers.size(); ++h) {
    out[h].receiver = receivers[h];
  }
  const auto fibers = cb.fibers();
  for (std::uint32_t c = 0; c < cb.t; ++c) {
    for (std::size_t h = 0; h < receivers.size(); ++h) {
      for (const auto& [key, acc] :
           slices_of(fibers[c], receivers[h], allowed[h], space)) {
        if (acc.mask == 0) {
          throw InputError("cannot derive decoders: fiber of codeword " +
                           std::to_string(c) + " is not decodable");
        }
        const int index = std::countr_zero(acc.mask);
        out[h].entries.push_back(
            DecoderEntry{c, key, index, space.digit(acc.rep, index)});
      }
    }
  }
  return out;
}

}  // namespace vpic

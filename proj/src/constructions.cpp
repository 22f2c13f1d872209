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

#include "vpic/constructions.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <tuple>

#include "vpic/decodability.hpp"

namespace vpic {

std::vector<std::uint32_t> xor_chain_encode(std::span<const std::uint32_t> bits) {
  if (bits.size() < 2) throw InputError("XOR chain needs m >= 2");
  std::vector<std::uint32_t> out(bits.size() - 1);
  for (std::size_t i = 0; i + 1 < bits.size(); ++i) {
    if (bits[i] > 1 || bits[i + 1] > 1) throw InputError("XOR chain input must be binary");
    out[i] = bits[i] ^ bits[i + 1];
  }
  return out;
}

std::vector<std::uint32_t> xor_chain_decode(std::span<const std::uint32_t> chain,
                                            int known_index,
                                            std::uint32_t known_bit) {
  const int m = static_cast<int>(chain.size()) + 1;
  if (known_index < 0 || known_index >= m) throw InputError("known index out of range");
  std::vector<std::uint32_t> y(m);
  y[known_index] = known_bit & 1u;
  for (int i = known_index + 1; i < m; ++i) y[i] = y[i - 1] ^ chain[i - 1];
  for (int i = known_index - 1; i >= 0; --i) y[i] = y[i + 1] ^ chain[i];
  return y;
}

MdsSpec make_mds(int m, int p, std::optional<std::uint32_t> field_size) {
  if (m < 2 || p < 1 || p >= m) {
    throw InputError("MDS code needs m >= 2 and 1 <= p < m");
  }
  MdsSpec spec{m, p, 2, Matrix(m - p, m)};
  if (p == 1) {
    spec.field_size = field_size.value_or(2);
  } else if (field_size) {
    spec.field_size = *field_size;
  } else {
    spec.field_size = static_cast<std::uint32_t>(m);
    while (!is_prime(spec.field_size)) ++spec.field_size;
  }
  const PrimeField f(spec.field_size);
  if (p == 1) {
    for (int r = 0; r + 1 < m; ++r) {
      spec.generator.at(r, r) = 1;
      spec.generator.at(r, r + 1) = f.sub(0, 1);
    }
  } else {
    if (spec.field_size < static_cast<std::uint32_t>(m)) {
      throw InputError("no admissible field: a Vandermonde (m, m-p) MDS code "
                       "needs a prime field of size at least m");
    }
    for (int j = 0; j < m; ++j) {
      std::uint32_t x = 1;
      for (int r = 0; r < m - p; ++r) {
        spec.generator.at(r, j) = x;
        x = f.mul(x, static_cast<std::uint32_t>(j));
      }
    }
  }
  return spec;
}

namespace {

// [G; I_S] for the known coordinates S.
Matrix known_system(const MdsSpec& spec, std::span<const int> known) {
  const auto rows = static_cast<std::size_t>(spec.m - spec.p) + known.size();
  Matrix a(rows, spec.m);
  for (int r = 0; r < spec.m - spec.p; ++r) {
    for (int c = 0; c < spec.m; ++c) a.at(r, c) = spec.generator.at(r, c);
  }
  for (std::size_t s = 0; s < known.size(); ++s) {
    a.at(spec.m - spec.p + s, known[s]) = 1;
  }
  return a;
}

}  // namespace

bool is_mds(const MdsSpec& spec) {
  const PrimeField f(spec.field_size);
  std::vector<int> known(spec.p);
  for (int i = 0; i < spec.p; ++i) known[i] = i;
  while (true) {
    if (row_reduce(known_system(spec, known), f).pivots.size() !=
        static_cast<std::size_t>(spec.m)) {
      return false;
    }
    int i = spec.p;
    while (i > 0 && known[i - 1] == spec.m - spec.p + i - 1) --i;
    if (i == 0) return true;
    ++known[i - 1];
    for (int j = i; j < spec.p; ++j) known[j] = known[j - 1] + 1;
  }
}

namespace {

struct Decoded {
  int index = 0;
  std::uint32_t value = 0;
};

// Builds a codebook over alphabet `k` from a per-realisation rule giving the
// raw codeword and, per receiver (instance order), the decoded pair. Rules
// must give the same pair for realisations sharing codeword and side info.
template <typename Rule>
VPCodebook assemble(const ProblemInstance& inst, const Alphabet& k, Rule&& rule) {
  const VertexSpace space(inst.message_count(), k);
  const auto receivers = inst.receivers();
  std::vector<std::uint64_t> raw(space.size());
  std::vector<std::vector<Decoded>> decoded(space.size());
  for (VertexId v = 0; v < space.size(); ++v) {
    decoded[v].resize(receivers.size());
    raw[v] = rule(space, v, decoded[v]);
  }
  VPCodebook cb;
  cb.message_count = inst.message_count();
  cb.alphabet_size = k.size();
  cb.t = compact_assignment(raw, cb.assignment);
  for (std::size_t h = 0; h < receivers.size(); ++h) {
    ReceiverDecoder d{receivers[h], {}};
    for (VertexId v = 0; v < space.size(); ++v) {
      d.entries.push_back(DecoderEntry{cb.assignment[v],
                                       space.side_key(v, receivers[h]),
                                       decoded[v][h].index, decoded[v][h].value});
    }
    std::sort(d.entries.begin(), d.entries.end(),
              [](const DecoderEntry& a, const DecoderEntry& b) {
                return std::tie(a.codeword, a.side_key) < std::tie(b.codeword, b.side_key);
              });
    std::vector<DecoderEntry> unique;
    for (const auto& e : d.entries) {
      if (!unique.empty() && unique.back().codeword == e.codeword &&
          unique.back().side_key == e.side_key) {
        if (!(unique.back() == e)) {
          throw std::logic_error("construction gives two decodings for one slice");
        }
        continue;
      }
      unique.push_back(e);
    }
    d.entries = std::move(unique);
    cb.decoders.push_back(std::move(d));
  }
  return cb;
}

void require_verified(const VPCodebook& cb, const ProblemInstance& inst) {
  const auto result = verify_codebook(cb, inst, cb.alphabet());
  if (!result.ok) {
    throw InputError("input codebook does not verify: " + result.message);
  }
}

std::uint64_t power(std::uint64_t base, int e) {
  std::uint64_t x = 1;
  for (int i = 0; i < e; ++i) x *= base;
  return x;
}

Alphabet product_alphabet(std::uint64_t a, std::uint64_t b) {
  if (a * b > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("combined alphabet is too large");
  }
  return Alphabet(static_cast<std::uint32_t>(a * b));
}

void require_side_info(const ProblemInstance& inst, int p) {
  for (MessageMask h : inst.receivers()) {
    if (popcount(h) < p) {
      Json r = Json::array();
      for (int i : mask_indices(h)) r.push_back(i + 1);
      throw InputError("receiver " + r.dump() + " knows fewer than " +
                       std::to_string(p) +
                       " message(s); concatenation needs |H| >= p for all H");
    }
  }
}

const DecoderEntry& lookup(const VPCodebook& cb, MessageMask h,
                           std::uint32_t codeword, std::uint64_t side_key) {
  const ReceiverDecoder* d = cb.decoder_for(h);
  const DecoderEntry* e = d ? d->find(codeword, side_key) : nullptr;
  if (e == nullptr) throw InputError("input codebook lacks a decoder entry");
  return *e;
}

}  // namespace

ConcatResult concat_double(const VPCodebook& cb, const ProblemInstance& inst) {
  require_side_info(inst, 1);
  require_verified(cb, inst);
  const int m = inst.message_count();
  const VertexSpace inner(m, cb.alphabet());
  const auto receivers = inst.receivers();
  const std::uint64_t chain_count = power(2, m - 1);

  ConcatResult out;
  out.field_size = 2;
  out.raw_t = cb.t * chain_count;
  out.codebook = assemble(
      inst, product_alphabet(cb.alphabet_size, 2),
      [&](const VertexSpace& space, VertexId x, std::vector<Decoded>& dec) {
        std::vector<std::uint32_t> a(m), bits(m);
        for (int i = 0; i < m; ++i) {
          a[i] = space.digit(x, i) / 2;
          bits[i] = space.digit(x, i) % 2;
        }
        const VertexId av = inner.index_of(a);
        const std::uint32_t c = cb.assignment[av];
        const auto chain = xor_chain_encode(bits);
        std::uint64_t chain_id = 0;
        for (std::uint32_t b : chain) chain_id = chain_id * 2 + b;
        for (std::size_t h = 0; h < receivers.size(); ++h) {
          const auto& e = lookup(cb, receivers[h], c, inner.side_key(av, receivers[h]));
          const int known = std::countr_zero(receivers[h]);
          const auto y = xor_chain_decode(chain, known, bits[known]);
          dec[h] = Decoded{e.index, 2 * e.value + y[e.index]};
        }
        return c * chain_count + chain_id;
      });
  return out;
}

ConcatResult concat_general(const VPCodebook& cb, const ProblemInstance& inst,
                            int p, std::optional<std::uint32_t> field_size) {
  const int m = inst.message_count();
  if (p < 1 || p >= m) throw InputError("p must lie in [1:m-1]");
  require_side_info(inst, p);
  require_verified(cb, inst);
  const MdsSpec mds = make_mds(m, p, field_size);
  const PrimeField f(mds.field_size);
  const VertexSpace inner(m, cb.alphabet());
  const auto receivers = inst.receivers();
  std::vector<Matrix> systems;
  for (MessageMask h : receivers) {
    const auto known = mask_indices(h);
    systems.push_back(known_system(mds, std::span(known).first(p)));
  }
  const std::uint64_t outer_count = power(f.order(), m - p);

  ConcatResult out;
  out.field_size = f.order();
  out.raw_t = cb.t * outer_count;
  out.codebook = assemble(
      inst, product_alphabet(cb.alphabet_size, f.order()),
      [&](const VertexSpace& space, VertexId x, std::vector<Decoded>& dec) {
        std::vector<std::uint32_t> a(m), y(m);
        for (int i = 0; i < m; ++i) {
          a[i] = space.digit(x, i) / f.order();
          y[i] = space.digit(x, i) % f.order();
        }
        const VertexId av = inner.index_of(a);
        const std::uint32_t c = cb.assignment[av];
        std::vector<std::uint32_t> parity(m - p, 0);
        std::uint64_t parity_id = 0;
        for (int r = 0; r < m - p; ++r) {
          for (int j = 0; j < m; ++j) {
            parity[r] = f.add(parity[r], f.mul(mds.generator.at(r, j), y[j]));
          }
          parity_id = parity_id * f.order() + parity[r];
        }
        for (std::size_t h = 0; h < receivers.size(); ++h) {
          const auto& e = lookup(cb, receivers[h], c, inner.side_key(av, receivers[h]));
          std::vector<std::uint32_t> rhs = parity;
          const auto known = mask_indices(receivers[h]);
          for (int s = 0; s < p; ++s) rhs.push_back(y[known[s]]);
          const auto solved = solve_unique(systems[h], rhs, f);
          if (!solved) throw std::logic_error("MDS layer failed to decode");
          dec[h] = Decoded{e.index, e.value * f.order() + (*solved)[e.index]};
        }
        return c * outer_count + parity_id;
      });
  return out;
}

VPCodebook pliable_power(const VPCodebook& cb, const ProblemInstance& inst,
                         int copies) {
  if (copies < 1) throw InputError("power must be at least 1");
  require_verified(cb, inst);
  if (!cb.is_pliable()) {
    throw InputError("pliable_power needs a pliable codebook (one decoded "
                     "index per receiver)");
  }
  if (copies == 1) return cb;
  const int m = inst.message_count();
  const std::uint32_t k = cb.alphabet_size;
  const std::uint64_t big_k = power(k, copies);
  if (big_k > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("power alphabet is too large");
  }
  const VertexSpace inner(m, cb.alphabet());
  const auto receivers = inst.receivers();
  return assemble(
      inst, Alphabet(static_cast<std::uint32_t>(big_k)),
      [&](const VertexSpace& space, VertexId x, std::vector<Decoded>& dec) {
        std::uint64_t codeword = 0;
        for (auto& d : dec) d.value = 0;
        for (int s = 0; s < copies; ++s) {
          const std::uint64_t place = power(k, copies - 1 - s);
          std::vector<std::uint32_t> layer(m);
          for (int i = 0; i < m; ++i) {
            layer[i] = static_cast<std::uint32_t>(space.digit(x, i) / place % k);
          }
          const VertexId lv = inner.index_of(layer);
          const std::uint32_t c = cb.assignment[lv];
          codeword = codeword * cb.t + c;
          for (std::size_t h = 0; h < receivers.size(); ++h) {
            const auto& e = lookup(cb, receivers[h], c, inner.side_key(lv, receivers[h]));
            dec[h].index = e.index;
            dec[h].value = dec[h].value * k + e.value;
          }
        }
        return codeword;
      });
}

VPCodebook naive_concat(const VPCodebook& first, const VPCodebook& second,
                        const ProblemInstance& inst) {
  const int m = inst.message_count();
  const VertexSpace outer(m, first.alphabet());
  const VertexSpace inner(m, second.alphabet());
  const std::uint32_t k2 = second.alphabet_size;
  const auto receivers = inst.receivers();
  return assemble(
      inst, product_alphabet(first.alphabet_size, k2),
      [&](const VertexSpace& space, VertexId x, std::vector<Decoded>& dec) {
        std::vector<std::uint32_t> a(m), b(m);
        for (int i = 0; i < m; ++i) {
          a[i] = space.digit(x, i) / k2;
          b[i] = space.digit(x, i) % k2;
        }
        const VertexId av = outer.index_of(a);
        const VertexId bv = inner.index_of(b);
        const std::uint32_t c1 = first.assignment[av];
        const std::uint32_t c2 = second.assignment[bv];
        for (std::size_t h = 0; h < receivers.size(); ++h) {
          const auto& e1 = lookup(first, receivers[h], c1, outer.side_key(av, receivers[h]));
          const auto& e2 = lookup(second, receivers[h], c2, inner.side_key(bv, receivers[h]));
          dec[h] = Decoded{e1.index, e1.value * k2 + e2.value};
        }
        return std::uint64_t{c1} * second.t + c2;
      });
}

}  // namespace vpic

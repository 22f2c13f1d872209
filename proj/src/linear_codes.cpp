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

#include "vpic/linear_codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "vpic/decodability.hpp"

namespace vpic {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) {
    throw InputError("field size " + std::to_string(q) + " is not prime");
  }
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % q_ == 0) throw InputError("zero has no inverse");
  std::uint32_t result = 1;
  std::uint32_t base = a % q_;
  for (std::uint32_t e = q_ - 2; e != 0; e >>= 1) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

RowEchelon row_reduce(const Matrix& a, const PrimeField& f) {
  Matrix m = a;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && m.at(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(rank, j));
    const std::uint32_t s = f.inv(m.at(rank, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(rank, j) = f.mul(m.at(rank, j), s);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      const std::uint32_t factor = m.at(r, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(rank, j)));
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  Matrix reduced(rank, m.cols());
  for (std::size_t r = 0; r < rank; ++r) {
    for (std::size_t j = 0; j < m.cols(); ++j) reduced.at(r, j) = m.at(r, j);
  }
  return {std::move(reduced), std::move(pivots)};
}

LinearEncoder::LinearEncoder(Matrix matrix, const PrimeField& f)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() < 1 || matrix_.rows() > matrix_.cols()) {
    throw InputError("encoder must have between 1 and m rows");
  }
  if (matrix_.cols() > static_cast<std::size_t>(kMaxMessages)) {
    throw InputError("encoder has too many columns");
  }
  for (std::size_t r = 0; r < matrix_.rows(); ++r) {
    for (std::uint32_t x : matrix_.row(r)) {
      if (x >= f.order()) throw InputError("matrix entry outside the field");
    }
  }
}

std::string LinearEncoder::str() const {
  std::ostringstream out;
  for (std::size_t r = 0; r < matrix_.rows(); ++r) {
    if (r) out << ';';
    for (std::size_t c = 0; c < matrix_.cols(); ++c) {
      if (c) out << ',';
      out << matrix_.at(r, c);
    }
  }
  return out.str();
}

LinearEncoder parse_encoder(std::string_view text, const PrimeField& f) {
  std::vector<std::vector<std::uint32_t>> rows;
  std::stringstream rows_in{std::string(text)};
  std::string row_text;
  while (std::getline(rows_in, row_text, ';')) {
    std::vector<std::uint32_t> row;
    std::stringstream cells{row_text};
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        const long v = std::stol(cell, &used);
        if (v < 0 || cell.find_first_not_of(" \t", used) != std::string::npos) {
          throw InputError("");
        }
        row.push_back(static_cast<std::uint32_t>(v));
      } catch (const std::exception&) {
        throw InputError("bad matrix entry '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) throw InputError("empty matrix");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return LinearEncoder(std::move(m), f);
}

std::vector<std::uint32_t> linear_encode(const LinearEncoder& enc,
                                         std::span<const std::uint32_t> x,
                                         const Alphabet& k, const PrimeField& f) {
  if (k.size() != f.order()) {
    throw InputError("linear codes need the message alphabet to be the field");
  }
  if (static_cast<int>(x.size()) != enc.message_count()) {
    throw InputError("realisation length does not match the encoder");
  }
  const Matrix& a = enc.matrix();
  std::vector<std::uint32_t> c(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (x[j] >= f.order()) throw InputError("message value outside the field");
      c[r] = f.add(c[r], f.mul(a.at(r, j), x[j]));
    }
  }
  return c;
}

MessageMask decodable_indices(const LinearEncoder& enc, MessageMask receiver,
                              const PrimeField& f) {
  const Matrix& a = enc.matrix();
  std::vector<std::size_t> unknown;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (!(receiver >> j & 1u)) unknown.push_back(j);
  }
  Matrix sub(a.rows(), unknown.size());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < unknown.size(); ++c) sub.at(r, c) = a.at(r, unknown[c]);
  }
  const auto ech = row_reduce(sub, f);
  MessageMask out = 0;
  for (std::size_t r = 0; r < ech.reduced.rows(); ++r) {
    const auto row = ech.reduced.row(r);
    if (std::count_if(row.begin(), row.end(), [](auto x) { return x != 0; }) == 1) {
      out |= MessageMask{1} << unknown[ech.pivots[r]];
    }
  }
  return out;
}

LinearCheck is_vp_linear(const LinearEncoder& enc, const ProblemInstance& inst,
                         const PrimeField& f) {
  if (enc.message_count() != inst.message_count()) {
    throw InputError("encoder width does not match m");
  }
  LinearCheck out;
  out.decodable = true;
  for (MessageMask h : inst.receivers()) {
    const MessageMask d = decodable_indices(enc, h, f);
    out.decodable_sets.push_back(d);
    out.choice.push_back(d ? std::countr_zero(d) : -1);
    if (!d) out.decodable = false;
  }
  return out;
}

namespace {

// Visits every reduced echelon matrix of the given rank; stops when `visit`
// returns true.
template <typename Visit>
bool for_each_echelon(std::size_t rank, std::size_t cols, const PrimeField& f,
                      Visit&& visit) {
  std::vector<std::size_t> pivots(rank);
  for (std::size_t i = 0; i < rank; ++i) pivots[i] = i;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free_cells;
    for (std::size_t r = 0; r < rank; ++r) {
      for (std::size_t c = pivots[r] + 1; c < cols; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) {
          free_cells.emplace_back(r, c);
        }
      }
    }
    Matrix m(rank, cols);
    for (std::size_t r = 0; r < rank; ++r) m.at(r, pivots[r]) = 1;
    std::vector<std::uint32_t> digits(free_cells.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < free_cells.size(); ++i) {
        m.at(free_cells[i].first, free_cells[i].second) = digits[i];
      }
      if (visit(m)) return true;
      std::size_t i = digits.size();
      while (i > 0 && digits[i - 1] == f.order() - 1) digits[--i] = 0;
      if (i == 0) break;
      ++digits[i - 1];
    }
    std::size_t i = rank;
    while (i > 0 && pivots[i - 1] == cols - rank + i - 1) --i;
    if (i == 0) return false;
    ++pivots[i - 1];
    for (std::size_t j = i; j < rank; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

// Number of rank-`rank` subspaces of GF(q)^cols, saturating at `cap` + 1.
std::uint64_t subspace_count(std::size_t rank, std::size_t cols, std::uint64_t q,
                             std::uint64_t cap) {
  // Sum over pivot sets of q^(free cells), via dynamic programming on columns.
  std::vector<std::vector<long double>> ways(cols + 1,
                                             std::vector<long double>(rank + 1, 0));
  ways[0][0] = 1;
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r <= rank; ++r) {
      if (ways[c][r] == 0) continue;
      // Non-pivot column: free in each of the r rows already started.
      ways[c + 1][r] += ways[c][r] * std::pow(static_cast<long double>(q), r);
      if (r < rank) ways[c + 1][r + 1] += ways[c][r];
    }
  }
  const long double total = ways[cols][rank];
  return total > static_cast<long double>(cap) ? cap + 1
                                               : static_cast<std::uint64_t>(total);
}

}  // namespace

LinearSearchResult linear_min_length(const ProblemInstance& inst,
                                     const PrimeField& f, std::size_t max_length,
                                     std::uint64_t cap) {
  const auto m = static_cast<std::size_t>(inst.message_count());
  if (max_length < 1 || max_length > m) {
    throw InputError("search length bound must lie in [1:m]");
  }
  LinearSearchResult out;
  for (std::size_t rank = 1; rank <= max_length; ++rank) {
    if (subspace_count(rank, m, f.order(), cap) > cap) {
      throw CapacityError("more than " + std::to_string(cap) +
                          " echelon forms of rank " + std::to_string(rank));
    }
    const bool found = for_each_echelon(rank, m, f, [&](const Matrix& mat) {
      ++out.examined;
      LinearEncoder enc(mat, f);
      if (!is_vp_linear(enc, inst, f).decodable) return false;
      out.length = rank;
      out.witness = std::move(enc);
      return true;
    });
    if (found) break;
  }
  return out;
}

VPCodebook linear_to_codebook(const LinearEncoder& enc,
                              const ProblemInstance& inst, const PrimeField& f) {
  const auto check = is_vp_linear(enc, inst, f);
  if (!check.decodable) {
    throw InputError("encoder is not decodable for every receiver");
  }
  const Alphabet k(f.order());
  const VertexSpace space(inst.message_count(), k);
  std::vector<std::uint64_t> raw(space.size());
  for (VertexId v = 0; v < space.size(); ++v) {
    std::uint64_t id = 0;
    for (std::uint32_t c : linear_encode(enc, space.realisation(v), k, f)) {
      id = id * f.order() + c;
    }
    raw[v] = id;
  }
  VPCodebook cb;
  cb.message_count = inst.message_count();
  cb.alphabet_size = k.size();
  cb.t = compact_assignment(raw, cb.assignment);
  DecodeChoices choices;
  for (int i : check.choice) choices.push_back(MessageMask{1} << i);
  cb.decoders = derive_decoders(cb, inst, space, choices);
  return cb;
}

std::optional<std::vector<std::uint32_t>> solve_unique(
    const Matrix& a, std::span<const std::uint32_t> b, const PrimeField& f) {
  if (b.size() != a.rows()) throw InputError("right-hand side length mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c) % f.order();
    aug.at(r, a.cols()) = b[r] % f.order();
  }
  const auto ech = row_reduce(aug, f);
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  if (ech.pivots.size() != a.cols()) return std::nullopt;
  std::vector<std::uint32_t> x(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    x[ech.pivots[r]] = ech.reduced.at(r, a.cols());
  }
  return x;
}

}  // namespace vpic

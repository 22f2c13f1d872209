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

// Scalar linear VP encoders E(x) = Ex over a prime field: unique-coordinate
// solvability per receiver, the induced pliable choice function, and an
// exhaustive search for the shortest decodable encoder.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vpic/core_model.hpp"

namespace vpic {

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q);
  std::uint32_t order() const { return q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % q_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + q_ - b) % q_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % q_);
  }
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t q_;
};

bool is_prime(std::uint32_t n);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

struct RowEchelon {
  Matrix reduced;  // nonzero rows only
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form over GF(q).
RowEchelon row_reduce(const Matrix& a, const PrimeField& f);

// A T x m encoding matrix, 1 <= T <= m.
class LinearEncoder {
 public:
  LinearEncoder(Matrix matrix, const PrimeField& f);
  const Matrix& matrix() const { return matrix_; }
  std::size_t length() const { return matrix_.rows(); }
  int message_count() const { return static_cast<int>(matrix_.cols()); }
  std::string str() const;
  friend bool operator==(const LinearEncoder&, const LinearEncoder&) = default;

 private:
  Matrix matrix_;
};

// "1,1,0;0,1,1": rows separated by ';', entries by ','.
LinearEncoder parse_encoder(std::string_view text, const PrimeField& f);

std::vector<std::uint32_t> linear_encode(const LinearEncoder& enc,
                                         std::span<const std::uint32_t> x,
                                         const Alphabet& k, const PrimeField& f);

// Messages j outside H whose unit vector lies in the row space of the
// columns of E outside H.
MessageMask decodable_indices(const LinearEncoder& enc, MessageMask receiver,
                              const PrimeField& f);

struct LinearCheck {
  bool decodable = false;
  std::vector<MessageMask> decodable_sets;  // per receiver, instance order
  // Smallest decodable index per receiver, or -1.
  std::vector<int> choice;
};

LinearCheck is_vp_linear(const LinearEncoder& enc, const ProblemInstance& inst,
                         const PrimeField& f);

struct LinearSearchResult {
  std::optional<std::size_t> length;
  std::optional<LinearEncoder> witness;
  std::uint64_t examined = 0;
};

// Scans reduced echelon representatives of rank T = 1, 2, ..., max_length
// (pivot sets, then free entries, in lexicographic order) and returns the
// first decodable one. Throws CapacityError if a rank would need more than
// `cap` representatives.
LinearSearchResult linear_min_length(const ProblemInstance& inst,
                                     const PrimeField& f,
                                     std::size_t max_length,
                                     std::uint64_t cap = 50'000'000);

// Pliable codebook of the encoder: codewords are the attained values of Ex
// (numbered in base-q order), each receiver decodes its fixed choice.
// Throws InputError if the encoder is not decodable.
VPCodebook linear_to_codebook(const LinearEncoder& enc,
                              const ProblemInstance& inst, const PrimeField& f);

// Solves Ax = b for a uniquely determined system; nullopt if the solution is
// not unique or the system is inconsistent.
std::optional<std::vector<std::uint32_t>> solve_unique(
    const Matrix& a, std::span<const std::uint32_t> b, const PrimeField& f);

}  // namespace vpic

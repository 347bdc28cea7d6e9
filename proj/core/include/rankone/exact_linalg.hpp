// Copyright 2026 The rankone Authors. All Rights Reserved.
//
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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankone/rational.hpp"

namespace rankone::linalg {

using BitVector = std::vector<bool>;

/// Dense bit matrix over GF(2), rows packed into 64-bit words.
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value);

  BitVector multiply(const BitVector& x) const;

  std::size_t words_per_row() const noexcept { return words_; }
  std::span<std::uint64_t> row_words(std::size_t r) { return {bits_.data() + r * words_, words_}; }
  std::span<const std::uint64_t> row_words(std::size_t r) const {
    return {bits_.data() + r * words_, words_};
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

enum class SolveStatus { Inconsistent, Unique, Affine };

struct Gf2Solution {
  SolveStatus status = SolveStatus::Inconsistent;
  BitVector particular;
  std::vector<BitVector> kernel_basis;
};

/// Gauss-Jordan over GF(2). Pivots are taken column by column, each from the
/// lowest-numbered remaining row; free variables are zero in `particular`.
Gf2Solution gf2_solve(const Gf2Matrix& a, const BitVector& b);

template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  bool operator==(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = DenseMatrix<Rational>;
using IntMatrix = DenseMatrix<BigInt>;

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
RationalMatrix to_rational(const IntMatrix& a);

/// Exact rank by fraction-free (Bareiss) elimination.
std::size_t rational_rank(const RationalMatrix& a);

/// Exact determinant of a square matrix (Bareiss).
BigInt determinant(const IntMatrix& a);

struct RationalSolution {
  SolveStatus status = SolveStatus::Inconsistent;
  std::vector<Rational> particular;
  /// One vector per free column, scaled so its first nonzero entry is positive.
  std::vector<std::vector<Rational>> kernel_basis;
};

/// Gauss-Jordan over Q with the same pivot rule as gf2_solve.
RationalSolution rational_solve(const RationalMatrix& a, std::span<const Rational> b);

/// A maximal set of linearly independent rows (in increasing order) and a
/// set of pivot columns making the square submatrix on them invertible.
struct RowBasis {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const noexcept { return rows.size(); }
};

/// Exact rank structure of an integer matrix. Candidate rows are selected by
/// elimination modulo a 61-bit prime; independence mod p implies independence
/// over Q, and any shortfall is closed by verifying an exact kernel basis of
/// the candidate rows against every row. The result is exact for any input.
RowBasis independent_rows(const IntMatrix& a);

/// U * A * V = diag(divisors), U and V unimodular. `divisors` has
/// min(rows, cols) entries: the invariant factors d_1 | d_2 | ... followed by
/// zeros.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix v;
  std::vector<BigInt> divisors;

  std::size_t rank() const;
};

SmithDecomposition integer_smith(const IntMatrix& a);

/// Checks U*A*V = D, |det U| = |det V| = 1 and the divisor chain exactly.
bool verify_smith(const IntMatrix& a, const SmithDecomposition& snf);

/// Row-style Hermite normal form H = U * A with U unimodular.
struct HermiteDecomposition {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
};

HermiteDecomposition hermite_normal_form(const IntMatrix& a);

/// Integer basis of {u : u^T A = 0}, read off the unimodular transform of
/// the Hermite form; each vector's first nonzero entry is positive.
std::vector<std::vector<BigInt>> integer_left_kernel(const IntMatrix& a);

}  // namespace rankone::linalg

namespace rankone::linalg {

/// The reduction of integer_smith with the row operations applied to an
/// exact right-hand side instead of being accumulated into U.
struct SmithTransform {
  IntMatrix v;
  std::vector<BigInt> divisors;
  /// U * rhs.
  std::vector<Rational> rhs;
};

SmithTransform smith_with_rhs(const IntMatrix& a, std::span<const Rational> rhs);

}  // namespace rankone::linalg

namespace rankone::linalg {

/// Pairwise coprime integers > 1 such that every input is, up to sign, a
/// product of their powers. Sorted increasing; inputs 0 and +-1 are ignored.
std::vector<BigInt> coprime_base(std::vector<BigInt> values);

/// Exponents of `value` over a coprime base that divides it completely.
std::vector<long> valuations(const BigInt& value, std::span<const BigInt> base);

}  // namespace rankone::linalg

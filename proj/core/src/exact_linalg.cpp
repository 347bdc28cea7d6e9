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

#include "rankone/exact_linalg.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "rankone/error.hpp"

namespace rankone::linalg {

// ---------------------------------------------------------------------------
// GF(2)

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool value) {
  auto& word = bits_[r * words_ + c / 64];
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  word = value ? (word | mask) : (word & ~mask);
}

BitVector Gf2Matrix::multiply(const BitVector& x) const {
  if (x.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "gf2 multiply");
  BitVector out(rows_, false);
  for (std::size_t r = 0; r < rows_; ++r) {
    bool acc = false;
    for (std::size_t c = 0; c < cols_; ++c) acc ^= get(r, c) && x[c];
    out[r] = acc;
  }
  return out;
}

Gf2Solution gf2_solve(const Gf2Matrix& a, const BitVector& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "gf2_solve: rhs size");
  Gf2Matrix m = a;
  BitVector rhs = b;
  const std::size_t words = m.words_per_row();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      auto rw = m.row_words(r);
      auto pw = m.row_words(p);
      std::swap_ranges(rw.begin(), rw.end(), pw.begin());
      bool tmp = rhs[r];
      rhs[r] = rhs[p];
      rhs[p] = tmp;
    }
    auto pivot_row = m.row_words(r);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || !m.get(i, c)) continue;
      auto target = m.row_words(i);
      for (std::size_t w = 0; w < words; ++w) target[w] ^= pivot_row[w];
      rhs[i] = rhs[i] != rhs[r];
    }
    pivots.push_back(c);
    ++r;
  }
  Gf2Solution out;
  for (std::size_t i = r; i < m.rows(); ++i) {
    if (rhs[i]) return out;
  }
  out.particular.assign(m.cols(), false);
  for (std::size_t i = 0; i < pivots.size(); ++i) out.particular[pivots[i]] = rhs[i];
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols(), false);
    v[f] = true;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = m.get(i, f);
    out.kernel_basis.push_back(std::move(v));
  }
  out.status = out.kernel_basis.empty() ? SolveStatus::Unique : SolveStatus::Affine;
  return out;
}

// ---------------------------------------------------------------------------
// Rational / integer dense helpers

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix multiply");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

RationalMatrix to_rational(const IntMatrix& a) {
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  }
  return out;
}

namespace {

IntMatrix clear_denominators(const RationalMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
    }
  }
  return out;
}

/// Fraction-free elimination in place; returns rank and the sign of the row
/// permutation applied.
std::size_t bareiss(IntMatrix& m, int* sign) {
  std::size_t rank = 0;
  BigInt prev = 1;
  int s = 1;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
      s = -s;
    }
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        BigInt t = m(rank, c) * m(i, j) - m(i, c) * m(rank, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(rank, c);
    ++rank;
  }
  if (sign) *sign = s;
  return rank;
}

/// Reduced row echelon form over Q, with the augmented columns `extra`
/// carried along. Returns the pivot columns (among the first `cols` columns).
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    if (m(r, c) != 1) {
      Rational inv = 1 / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (m(r, j) != 0) m(r, j) *= inv;
      }
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Rational>> kernel_from_rref(const RationalMatrix& m, std::size_t cols,
                                                    const std::vector<std::size_t>& pivots) {
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (first != v.end() && *first < 0) {
      for (auto& x : v) x = -x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::size_t rational_rank(const RationalMatrix& a) {
  IntMatrix m = clear_denominators(a);
  return bareiss(m, nullptr);
}

BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square");
  if (a.rows() == 0) return BigInt(1);
  IntMatrix m = a;
  int sign = 1;
  std::size_t rank = bareiss(m, &sign);
  if (rank < a.rows()) return BigInt(0);
  BigInt det = m(a.rows() - 1, a.cols() - 1);
  return sign < 0 ? BigInt(-det) : det;
}

RationalSolution rational_solve(const RationalMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "rational_solve: rhs size");
  RationalMatrix m(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    m(i, a.cols()) = b[i];
  }
  auto pivots = rref(m, a.cols());
  RationalSolution out;
  for (std::size_t i = pivots.size(); i < m.rows(); ++i) {
    if (m(i, a.cols()) != 0) return out;
  }
  out.particular.assign(a.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) out.particular[pivots[i]] = m(i, a.cols());
  out.kernel_basis = kernel_from_rref(m, a.cols(), pivots);
  out.status = out.kernel_basis.empty() ? SolveStatus::Unique : SolveStatus::Affine;
  return out;
}

// ---------------------------------------------------------------------------
// Certified rank structure

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  __extension__ using u128 = unsigned __int128;
  u128 p = static_cast<u128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  while (exp) {
    if (exp & 1) result = mulmod(result, base);
    base = mulmod(base, base);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce(const BigInt& x) {
  return static_cast<std::uint64_t>(mpz_fdiv_ui(x.get_mpz_t(), kPrime));
}

RationalMatrix submatrix_rows(const IntMatrix& a, const std::vector<std::size_t>& rows) {
  RationalMatrix out(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(rows[i], j));
  }
  return out;
}

}  // namespace

RowBasis independent_rows(const IntMatrix& a) {
  const std::size_t n = a.cols();
  RowBasis out;
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<std::uint64_t> v(n);
  for (std::size_t r = 0; r < a.rows() && out.rows.size() < n; ++r) {
    for (std::size_t j = 0; j < n; ++j) v[j] = reduce(a(r, j));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      std::uint64_t f = v[out.pivot_columns[b]];
      if (f == 0) continue;
      const auto& row = basis[b];
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j]) v[j] = submod(v[j], mulmod(f, row[j]));
      }
    }
    auto lead = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
    if (lead == v.end()) continue;
    std::uint64_t inv = powmod(*lead, kPrime - 2);
    for (auto& x : v) x = mulmod(x, inv);
    out.pivot_columns.push_back(static_cast<std::size_t>(lead - v.begin()));
    out.rows.push_back(r);
    basis.push_back(v);
  }
  if (out.rows.size() == n) {
    // rank over Q is at least the rank mod p, and at most the column count.
    std::sort(out.pivot_columns.begin(), out.pivot_columns.end());
    return out;
  }

  // Rank mod p may undercount. Grow the candidate set until the exact kernel
  // of the candidate rows annihilates every row of A.
  std::vector<std::size_t> rows = out.rows;
  while (true) {
    RationalMatrix sub = submatrix_rows(a, rows);
    auto pivots = rref(sub, n);
    auto kernel = kernel_from_rref(sub, n, pivots);
    std::vector<bool> chosen(a.rows(), false);
    for (auto r : rows) chosen[r] = true;
    std::optional<std::size_t> witness;
    for (std::size_t r = 0; r < a.rows() && !witness; ++r) {
      if (chosen[r]) continue;
      for (const auto& k : kernel) {
        Rational dot(0);
        for (std::size_t j = 0; j < n; ++j) {
          if (a(r, j) != 0 && k[j] != 0) dot += a(r, j) * k[j];
        }
        if (dot != 0) {
          witness = r;
          break;
        }
      }
    }
    if (!witness) {
      RowBasis exact;
      exact.rows = rows;
      exact.pivot_columns = pivots;
      return exact;
    }
    rows.insert(std::upper_bound(rows.begin(), rows.end(), *witness), *witness);
  }
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

/// Unimodular reduction of a working copy of A. Row operations are mirrored
/// on U (when tracked) and on an exact right-hand side; column operations on V.
class SmithReducer {
 public:
  SmithReducer(const IntMatrix& a, bool track_u, std::vector<Rational>* rhs)
      : d_(a), v_(IntMatrix::identity(a.cols())), rhs_(rhs) {
    if (track_u) u_ = IntMatrix::identity(a.rows());
  }

  std::vector<BigInt> run() {
    const std::size_t m = d_.rows();
    const std::size_t n = d_.cols();
    const std::size_t k = std::min(m, n);
    std::vector<BigInt> divisors(k, BigInt(0));
    for (std::size_t t = 0; t < k; ++t) {
      if (!move_smallest_to(t)) break;
      while (true) {
        clear_column(t);
        clear_row(t);
        if (!column_clear(t)) continue;
        auto bad = find_non_divisible(t);
        if (!bad) break;
        add_row(t, *bad, BigInt(1));
      }
      if (d_(t, t) < 0) negate_row(t);
      divisors[t] = d_(t, t);
    }
    return divisors;
  }

  IntMatrix& u() { return u_; }
  IntMatrix& v() { return v_; }

 private:
  bool move_smallest_to(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < d_.rows(); ++i) {
      for (std::size_t j = t; j < d_.cols(); ++j) {
        if (d_(i, j) == 0) continue;
        if (!best || abs(d_(i, j)) < abs(d_(best->first, best->second))) best = {i, j};
      }
    }
    if (!best) return false;
    if (best->first != t) swap_rows(t, best->first);
    if (best->second != t) swap_cols(t, best->second);
    return true;
  }

  bool column_clear(std::size_t t) const {
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      if (d_(i, t) != 0) return false;
    }
    return true;
  }

  void clear_column(std::size_t t) {
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      if (d_(i, t) == 0) continue;
      const BigInt a = d_(t, t);
      const BigInt b = d_(i, t);
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        add_row(i, t, BigInt(-(b / a)));
        continue;
      }
      BigInt g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      combine_rows(t, i, x, y, BigInt(-(b / g)), BigInt(a / g));
    }
  }

  void clear_row(std::size_t t) {
    for (std::size_t j = t + 1; j < d_.cols(); ++j) {
      if (d_(t, j) == 0) continue;
      const BigInt a = d_(t, t);
      const BigInt b = d_(t, j);
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        add_col(j, t, BigInt(-(b / a)));
        continue;
      }
      BigInt g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      combine_cols(t, j, x, y, BigInt(-(b / g)), BigInt(a / g));
    }
  }

  std::optional<std::size_t> find_non_divisible(std::size_t t) const {
    const BigInt& p = d_(t, t);
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (d_(i, j) != 0 && !mpz_divisible_p(d_(i, j).get_mpz_t(), p.get_mpz_t())) return i;
      }
    }
    return std::nullopt;
  }

  template <typename Fn>
  void for_row_targets(Fn&& fn) {
    fn(d_);
    if (u_.rows()) fn(u_);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for_row_targets([&](IntMatrix& m) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
    });
    if (rhs_) std::swap((*rhs_)[i], (*rhs_)[j]);
  }

  void negate_row(std::size_t i) {
    for_row_targets([&](IntMatrix& m) {
      for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = -m(i, c);
    });
    if (rhs_) (*rhs_)[i] = -(*rhs_)[i];
  }

  /// row_target += f * row_source
  void add_row(std::size_t target, std::size_t source, const BigInt& f) {
    for_row_targets([&](IntMatrix& m) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (m(source, c) != 0) m(target, c) += f * m(source, c);
      }
    });
    if (rhs_) (*rhs_)[target] += Rational(f) * (*rhs_)[source];
  }

  /// (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j), ad - bc = 1.
  void combine_rows(std::size_t i, std::size_t j, const BigInt& a, const BigInt& b,
                    const BigInt& c, const BigInt& d) {
    for_row_targets([&](IntMatrix& m) {
      for (std::size_t col = 0; col < m.cols(); ++col) {
        BigInt x = m(i, col);
        BigInt y = m(j, col);
        m(i, col) = a * x + b * y;
        m(j, col) = c * x + d * y;
      }
    });
    if (rhs_) {
      Rational x = (*rhs_)[i];
      Rational y = (*rhs_)[j];
      (*rhs_)[i] = Rational(a) * x + Rational(b) * y;
      (*rhs_)[j] = Rational(c) * x + Rational(d) * y;
    }
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (IntMatrix* m : {&d_, &v_}) {
      for (std::size_t r = 0; r < m->rows(); ++r) std::swap((*m)(r, i), (*m)(r, j));
    }
  }

  void add_col(std::size_t target, std::size_t source, const BigInt& f) {
    for (IntMatrix* m : {&d_, &v_}) {
      for (std::size_t r = 0; r < m->rows(); ++r) {
        if ((*m)(r, source) != 0) (*m)(r, target) += f * (*m)(r, source);
      }
    }
  }

  void combine_cols(std::size_t i, std::size_t j, const BigInt& a, const BigInt& b,
                    const BigInt& c, const BigInt& d) {
    for (IntMatrix* m : {&d_, &v_}) {
      for (std::size_t r = 0; r < m->rows(); ++r) {
        BigInt x = (*m)(r, i);
        BigInt y = (*m)(r, j);
        (*m)(r, i) = a * x + b * y;
        (*m)(r, j) = c * x + d * y;
      }
    }
  }

  IntMatrix d_;
  IntMatrix u_;
  IntMatrix v_;
  std::vector<Rational>* rhs_;
};

}  // namespace

std::size_t SmithDecomposition::rank() const {
  return static_cast<std::size_t>(
      std::count_if(divisors.begin(), divisors.end(), [](const BigInt& d) { return d != 0; }));
}

SmithDecomposition integer_smith(const IntMatrix& a) {
  SmithReducer reducer(a, true, nullptr);
  SmithDecomposition out;
  out.divisors = reducer.run();
  out.u = std::move(reducer.u());
  out.v = std::move(reducer.v());
#ifdef RANKONE_CHECK_INVARIANTS
  if (!verify_smith(a, out)) throw std::logic_error("integer_smith: reconstruction failed");
#endif
  return out;
}

SmithTransform smith_with_rhs(const IntMatrix& a, std::span<const Rational> rhs) {
  if (rhs.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "smith_with_rhs");
  std::vector<Rational> work(rhs.begin(), rhs.end());
#ifdef RANKONE_CHECK_INVARIANTS
  // U is m x m, so only track it where the check stays cheap.
  const bool check = a.rows() <= 96;
#else
  const bool check = false;
#endif
  SmithReducer reducer(a, check, &work);
  SmithTransform out;
  out.divisors = reducer.run();
  out.v = std::move(reducer.v());
  out.rhs = std::move(work);
  if (check) {
    SmithDecomposition snf{std::move(reducer.u()), out.v, out.divisors};
    if (!verify_smith(a, snf)) throw std::logic_error("smith_with_rhs: reconstruction failed");
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Rational acc(0);
      for (std::size_t j = 0; j < a.rows(); ++j) {
        if (snf.u(i, j) != 0) acc += Rational(snf.u(i, j)) * rhs[j];
      }
      if (acc != out.rhs[i]) throw std::logic_error("smith_with_rhs: right-hand side mismatch");
    }
  }
  return out;
}

bool verify_smith(const IntMatrix& a, const SmithDecomposition& snf) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (snf.u.rows() != m || snf.u.cols() != m || snf.v.rows() != n || snf.v.cols() != n) return false;
  if (snf.divisors.size() != std::min(m, n)) return false;
  IntMatrix d = multiply(multiply(snf.u, a), snf.v);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt expected = (i == j) ? snf.divisors[i] : BigInt(0);
      if (d(i, j) != expected) return false;
    }
  }
  if (abs(determinant(snf.u)) != 1 || abs(determinant(snf.v)) != 1) return false;
  bool seen_zero = false;
  for (std::size_t i = 0; i < snf.divisors.size(); ++i) {
    const BigInt& di = snf.divisors[i];
    if (di < 0) return false;
    if (di == 0) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;
    if (i > 0 && !mpz_divisible_p(di.get_mpz_t(), snf.divisors[i - 1].get_mpz_t())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hermite normal form and left kernel

HermiteDecomposition hermite_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  HermiteDecomposition out{a, IntMatrix::identity(m), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  auto row_op = [&](std::size_t i, std::size_t j, const BigInt& p, const BigInt& q,
                    const BigInt& r, const BigInt& s) {
    for (IntMatrix* mat : {&h, &u}) {
      for (std::size_t c = 0; c < mat->cols(); ++c) {
        BigInt x = (*mat)(i, c);
        BigInt y = (*mat)(j, c);
        (*mat)(i, c) = p * x + q * y;
        (*mat)(j, c) = r * x + s * y;
      }
    }
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h(i, c) == 0) continue;
      if (h(r, c) == 0) {
        row_op(r, i, BigInt(0), BigInt(1), BigInt(1), BigInt(0));
        continue;
      }
      const BigInt x0 = h(r, c);
      const BigInt y0 = h(i, c);
      BigInt g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), x0.get_mpz_t(), y0.get_mpz_t());
      row_op(r, i, p, q, BigInt(-(y0 / g)), BigInt(x0 / g));
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      for (IntMatrix* mat : {&h, &u}) {
        for (std::size_t col = 0; col < mat->cols(); ++col) (*mat)(r, col) = -(*mat)(r, col);
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q == 0) continue;
      for (IntMatrix* mat : {&h, &u}) {
        for (std::size_t col = 0; col < mat->cols(); ++col) (*mat)(i, col) -= q * (*mat)(r, col);
      }
    }
    ++r;
  }
  out.rank = r;
  return out;
}

std::vector<std::vector<BigInt>> integer_left_kernel(const IntMatrix& a) {
  auto hnf = hermite_normal_form(a);
  std::vector<std::vector<BigInt>> basis;
  for (std::size_t i = hnf.rank; i < a.rows(); ++i) {
    auto v = hnf.u.row(i);
    auto first = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
    if (first != v.end() && *first < 0) {
      for (auto& x : v) x = -x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace rankone::linalg

namespace rankone::linalg {

std::vector<BigInt> coprime_base(std::vector<BigInt> values) {
  std::vector<BigInt> work;
  for (auto& v : values) {
    BigInt a = abs(v);
    if (a > 1) work.push_back(std::move(a));
  }
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());
  // Replace any pair sharing a factor g by (g, a/g, b/g); the product of the
  // multiset strictly decreases, so this terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < work.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), work[i].get_mpz_t(), work[j].get_mpz_t());
        if (g == 1) continue;
        BigInt a = work[i] / g;
        BigInt b = work[j] / g;
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(j));
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(i));
        for (BigInt* x : {&g, &a, &b}) {
          if (*x > 1) work.push_back(*x);
        }
        std::sort(work.begin(), work.end());
        work.erase(std::unique(work.begin(), work.end()), work.end());
        changed = true;
      }
    }
  }
  return work;
}

std::vector<long> valuations(const BigInt& value, std::span<const BigInt> base) {
  BigInt rest = abs(value);
  std::vector<long> out(base.size(), 0);
  for (std::size_t b = 0; b < base.size(); ++b) {
    while (rest != 0 && mpz_divisible_p(rest.get_mpz_t(), base[b].get_mpz_t())) {
      rest /= base[b];
      ++out[b];
    }
  }
  if (rest != 1) throw std::logic_error("valuations: base does not divide value");
  return out;
}

}  // namespace rankone::linalg

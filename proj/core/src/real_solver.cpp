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

#include "rankone/real_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "rankone/error.hpp"

namespace rankone {
namespace {

using linalg::RationalMatrix;

/// [A_{S,P} | extra] as a rational matrix.
RationalMatrix pivot_block(const DesignMatrix& design, const linalg::RowBasis& basis,
                           std::size_t extra_cols) {
  const std::size_t r = basis.rank();
  RationalMatrix out(r, r + extra_cols);
  std::vector<std::optional<std::size_t>> position(design.cols());
  for (std::size_t k = 0; k < r; ++k) position[basis.pivot_columns[k]] = k;
  for (std::size_t l = 0; l < r; ++l) {
    for (auto c : design.row_support(basis.rows[l])) {
      if (position[c]) out(l, *position[c]) = 1;
    }
  }
  return out;
}

/// Gauss-Jordan on an invertible leading r x r block; the trailing columns
/// end up holding block^{-1} * trailing.
void reduce_pivot_block(RationalMatrix& work, std::size_t r) {
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t p = c;
    while (work(p, c) == 0) ++p;
    if (p != c) {
      for (std::size_t j = 0; j < work.cols(); ++j) std::swap(work(p, j), work(c, j));
    }
    Rational inv = 1 / work(c, c);
    for (std::size_t j = c; j < work.cols(); ++j) {
      if (work(c, j) != 0) work(c, j) *= inv;
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c || work(i, c) == 0) continue;
      Rational f = work(i, c);
      for (std::size_t j = c; j < work.cols(); ++j) {
        if (work(c, j) != 0) work(i, j) -= f * work(c, j);
      }
    }
  }
}

std::vector<std::vector<Rational>> design_kernel(const DesignMatrix& design,
                                                 const linalg::RowBasis& basis) {
  if (basis.rank() == design.cols()) return {};
  RationalMatrix sub(basis.rank(), design.cols());
  for (std::size_t l = 0; l < basis.rank(); ++l) {
    for (auto c : design.row_support(basis.rows[l])) sub(l, c) = 1;
  }
  std::vector<Rational> zero(basis.rank(), Rational(0));
  return linalg::rational_solve(sub, zero).kernel_basis;
}

void solve_exact(const PartialTensor& tensor, const PatternAnalysis& analysis,
                 const MagnitudeOptions& options, MagnitudeSolution& out) {
  const auto& design = analysis.design;
  const auto& basis = analysis.basis;
  const auto& values = tensor.exact_values();
  const std::size_t m = tensor.m();
  const std::size_t n = design.cols();
  const std::size_t r = basis.rank();

  std::vector<BigInt> parts;
  for (const auto& v : values) {
    parts.push_back(v.magnitude.get_num());
    parts.push_back(v.magnitude.get_den());
  }
  const auto base = linalg::coprime_base(std::move(parts));
  const std::size_t nb = base.size();
  std::vector<std::vector<long>> val(m);
  for (std::size_t e = 0; e < m; ++e) {
    auto num = linalg::valuations(values[e].magnitude.get_num(), base);
    auto den = linalg::valuations(values[e].magnitude.get_den(), base);
    val[e].resize(nb);
    for (std::size_t b = 0; b < nb; ++b) val[e][b] = num[b] - den[b];
  }

  // coefficients[c][b]: log|x_c| = sum_b coefficients[c][b] * log(base_b)
  std::vector<std::vector<Rational>> coefficients(n, std::vector<Rational>(nb, Rational(0)));
  if (nb > 0 && r > 0) {
    RationalMatrix block = pivot_block(design, basis, nb);
    for (std::size_t l = 0; l < r; ++l) {
      for (std::size_t b = 0; b < nb; ++b) block(l, r + b) = Rational(val[basis.rows[l]][b]);
    }
    reduce_pivot_block(block, r);
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t b = 0; b < nb; ++b) coefficients[basis.pivot_columns[k]][b] = block(k, r + b);
    }
  }

  std::vector<bool> in_basis(m, false);
  for (auto e : basis.rows) in_basis[e] = true;
  out.consistent = true;
  for (std::size_t e = 0; e < m && out.consistent; ++e) {
    if (in_basis[e]) continue;
    for (std::size_t b = 0; b < nb; ++b) {
      Rational lhs(0);
      for (auto c : design.row_support(e)) lhs += coefficients[c][b];
      if (lhs != val[e][b]) {
        out.consistent = false;
        break;
      }
    }
  }
  std::vector<double> log_base(nb);
  for (std::size_t b = 0; b < nb; ++b) log_base[b] = log_of(base[b]);
  out.log_values.assign(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t b = 0; b < nb; ++b) {
      if (coefficients[c][b] != 0) out.log_values[c] += to_double(coefficients[c][b]) * log_base[b];
    }
  }

  if (options.exponents) {
    out.exponents.assign(n, ExponentVector{});
    if (r > 0) {
      RationalMatrix work = pivot_block(design, basis, r);
      for (std::size_t l = 0; l < r; ++l) work(l, r + l) = 1;
      reduce_pivot_block(work, r);
      for (std::size_t k = 0; k < r; ++k) {
        ExponentVector ev;
        for (std::size_t l = 0; l < r; ++l) {
          if (work(k, r + l) != 0) ev.emplace_back(basis.rows[l], work(k, r + l));
        }
        std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out.exponents[basis.pivot_columns[k]] = std::move(ev);
      }
    }
  }
}

void solve_float(const PartialTensor& tensor, const PatternAnalysis& analysis,
                 MagnitudeSolution& out) {
  const auto& design = analysis.design;
  const auto& basis = analysis.basis;
  const std::size_t m = tensor.m();
  const std::size_t r = basis.rank();
  Eigen::VectorXd q(static_cast<Eigen::Index>(m));
  double max_q = 0.0;
  for (std::size_t e = 0; e < m; ++e) {
    q(static_cast<Eigen::Index>(e)) = tensor.log_magnitude(e);
    max_q = std::max(max_q, std::abs(q(static_cast<Eigen::Index>(e))));
  }
  out.log_values.assign(design.cols(), 0.0);
  Eigen::VectorXd fitted = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  if (r > 0) {
    std::vector<std::optional<std::size_t>> position(design.cols());
    for (std::size_t k = 0; k < r; ++k) position[basis.pivot_columns[k]] = k;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(r));
    for (std::size_t e = 0; e < m; ++e) {
      for (auto c : design.row_support(e)) {
        if (position[c]) a(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(*position[c])) = 1.0;
      }
    }
    Eigen::VectorXd x = a.householderQr().solve(q);
    for (std::size_t k = 0; k < r; ++k) out.log_values[basis.pivot_columns[k]] = x(static_cast<Eigen::Index>(k));
    fitted = a * x;
  }
  out.max_residual = (fitted - q).cwiseAbs().maxCoeff();
  out.consistent = out.max_residual <= 1e-8 * (1.0 + max_q);
}

}  // namespace

MagnitudeSolution solve_magnitudes(const PartialTensor& tensor, const PatternAnalysis& analysis,
                                   const MagnitudeOptions& options) {
  MagnitudeSolution out;
  if (tensor.mode() == ValueMode::Exact) {
    solve_exact(tensor, analysis, options, out);
  } else {
    solve_float(tensor, analysis, out);
  }
  out.kernel_basis = design_kernel(analysis.design, analysis.basis);
  return out;
}

MagnitudeSolution solve_magnitudes(const PartialTensor& tensor, const MagnitudeOptions& options) {
  return solve_magnitudes(tensor, analyze_structure(tensor.pattern()), options);
}

SignSystem build_sign_system(const PartialTensor& tensor, const DesignMatrix& design) {
  SignSystem out{design.mod2(), linalg::BitVector(tensor.m(), false)};
  for (std::size_t e = 0; e < tensor.m(); ++e) {
    if (!tensor.is_real(e)) {
      throw Error(ErrorCode::NonRealValue,
                  "entry " + to_string(tensor.pattern().index(e)) + " is not real");
    }
    out.signs[e] = tensor.phase_turns(e) != 0;
  }
  return out;
}

SignSystem build_sign_system(const PartialTensor& tensor) {
  return build_sign_system(tensor, DesignMatrix(tensor.pattern()));
}

RankOneFactors assemble_factors(const DesignMatrix& design, std::span<const std::size_t> dims,
                                const MagnitudeSolution& magnitudes,
                                std::span<const Rational> column_phases) {
  std::vector<std::vector<FactorEntry>> vectors;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::vector<FactorEntry> entries;
    for (std::size_t i = 1; i <= dims[k]; ++i) {
      FactorEntry entry{1.0, ExponentVector{}, Rational(0)};
      if (auto c = design.column_of(k, i)) {
        entry.magnitude = std::exp(magnitudes.log_values[*c]);
        if (magnitudes.exponents.empty()) {
          entry.exponents.reset();
        } else {
          entry.exponents = magnitudes.exponents[*c];
        }
        entry.phase_turns = column_phases[*c];
      }
      entries.push_back(std::move(entry));
    }
    vectors.push_back(std::move(entries));
  }
  return RankOneFactors(std::move(vectors));
}

std::string_view to_string(RealStatus status) noexcept {
  switch (status) {
    case RealStatus::NoSolutionMagnitude: return "no_solution_magnitude";
    case RealStatus::NoSolutionSign: return "no_solution_sign";
    case RealStatus::Solutions: return "solutions";
  }
  return "unknown";
}

RealSolveResult solve_real(const PartialTensor& tensor, const RealSolveOptions& options) {
  auto analysis = analyze_structure(tensor.pattern());
  auto signs = build_sign_system(tensor, analysis.design);

  RealSolveResult out;
  out.pattern = analysis.report;
  out.count = SolutionCount::finite(0);
  out.magnitudes = solve_magnitudes(tensor, analysis, options.magnitudes);
  if (!out.magnitudes.consistent) {
    out.status = RealStatus::NoSolutionMagnitude;
    return out;
  }
  auto gf2 = linalg::gf2_solve(signs.matrix, signs.signs);
  if (gf2.status == linalg::SolveStatus::Inconsistent) {
    out.status = RealStatus::NoSolutionSign;
    return out;
  }
  out.status = RealStatus::Solutions;
  out.sign_kernel_dim = gf2.kernel_basis.size();
  out.sign_kernel_basis = gf2.kernel_basis;

  const std::size_t n = analysis.design.cols();
  auto to_phases = [&](const linalg::BitVector& bits) {
    std::vector<Rational> phases(n, Rational(0));
    for (std::size_t c = 0; c < n; ++c) {
      if (bits[c]) phases[c] = Rational(1, 2);
    }
    return phases;
  };

  if (!analysis.report.condition_a) {
    out.count = SolutionCount::unbounded();
    out.solutions.infinite = true;
    out.solutions.solutions.push_back(
        assemble_factors(analysis.design, tensor.dims(), out.magnitudes, to_phases(gf2.particular)));
    return out;
  }

  BigInt count;
  mpz_ui_pow_ui(count.get_mpz_t(), 2, out.sign_kernel_dim);
  out.count = SolutionCount::finite(count);
  if (out.sign_kernel_dim > options.enumeration_cap_bits) {
    out.materialized = false;
    out.solutions.solutions.push_back(
        assemble_factors(analysis.design, tensor.dims(), out.magnitudes, to_phases(gf2.particular)));
    return out;
  }
  const std::size_t total = std::size_t{1} << out.sign_kernel_dim;
  for (std::size_t mask = 0; mask < total; ++mask) {
    linalg::BitVector bits = gf2.particular;
    for (std::size_t g = 0; g < out.sign_kernel_dim; ++g) {
      if (!((mask >> g) & 1u)) continue;
      for (std::size_t c = 0; c < n; ++c) bits[c] = bits[c] != gf2.kernel_basis[g][c];
    }
    out.solutions.solutions.push_back(
        assemble_factors(analysis.design, tensor.dims(), out.magnitudes, to_phases(bits)));
  }
  std::sort(out.solutions.solutions.begin(), out.solutions.solutions.end(), canonical_less);
  return out;
}

SolutionCount brute_force_signs(const PartialTensor& tensor, std::size_t max_unknowns) {
  const auto& dims = tensor.dims();
  const std::size_t d = dims.size();
  // Bit position of each unpinned component, built independently of DesignMatrix.
  std::vector<std::vector<int>> bit(d);
  int next = 0;
  for (std::size_t k = 0; k < d; ++k) {
    bit[k].assign(dims[k], -1);
    for (std::size_t i = 0; i < dims[k]; ++i) {
      if (i == 0 && k + 1 < d) continue;
      bit[k][i] = next++;
    }
  }
  const auto unknowns = static_cast<std::size_t>(next);
  if (unknowns > max_unknowns) {
    throw Error(ErrorCode::CapExceeded, std::to_string(unknowns) + " unknowns exceed sign-search cap " +
                                            std::to_string(max_unknowns));
  }
  std::vector<bool> negative(tensor.m());
  for (std::size_t e = 0; e < tensor.m(); ++e) {
    if (!tensor.is_real(e)) throw Error(ErrorCode::NonRealValue, "sign search needs real values");
    negative[e] = tensor.phase_turns(e) != 0;
  }
  auto analysis = analyze_structure(tensor.pattern());
  auto magnitudes = solve_magnitudes(tensor, analysis, MagnitudeOptions{false});
  if (!magnitudes.consistent) return SolutionCount::finite(0);

  std::uint64_t survivors = 0;
  const std::uint64_t total = std::uint64_t{1} << unknowns;
  for (std::uint64_t s = 0; s < total; ++s) {
    bool ok = true;
    for (std::size_t e = 0; e < tensor.m() && ok; ++e) {
      const auto& idx = tensor.pattern().index(e);
      bool parity = false;
      for (std::size_t k = 0; k < d; ++k) {
        int b = bit[k][idx[k] - 1];
        if (b >= 0) parity ^= ((s >> b) & 1u) != 0;
      }
      ok = parity == negative[e];
    }
    if (ok) ++survivors;
  }
  if (survivors > 0 && !analysis.report.condition_a) return SolutionCount::unbounded();
  return SolutionCount::finite(BigInt(static_cast<unsigned long>(survivors)));
}

}  // namespace rankone

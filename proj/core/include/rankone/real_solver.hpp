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
#include <span>
#include <vector>

#include "rankone/exact_linalg.hpp"
#include "rankone/model.hpp"
#include "rankone/pattern.hpp"

namespace rankone {

struct MagnitudeOptions {
  /// Compute per-unknown exponent vectors over the observations (exact mode).
  bool exponents = true;
};

/// Solution of x_{i_1} + ... + x_{i_d} = log|Q_e| with pinned components zero.
/// Free unknowns (when condition (A) fails) are set to zero.
struct MagnitudeSolution {
  bool consistent = false;
  /// Per design column.
  std::vector<double> log_values;
  /// Per design column when requested in exact mode, else empty.
  std::vector<ExponentVector> exponents;
  /// Exact rational kernel of the design matrix; empty under condition (A).
  std::vector<std::vector<Rational>> kernel_basis;
  /// Float mode: max |A x - q| of the least-squares fit.
  double max_residual = 0.0;
};

/// Exact mode decides consistency exactly: the magnitudes are factored over a
/// coprime base, whose logarithms are linearly independent over Q, so the
/// log system splits into one exact rational system per base element.
/// Float mode accepts when the least-squares residual is at most
/// 1e-8 * (1 + max|q|).
MagnitudeSolution solve_magnitudes(const PartialTensor& tensor, const PatternAnalysis& analysis,
                                   const MagnitudeOptions& options = {});
MagnitudeSolution solve_magnitudes(const PartialTensor& tensor,
                                   const MagnitudeOptions& options = {});

/// GF(2) system over the design matrix: bit 0 = positive component, bit 1 =
/// negative, and signs[e] = [Q_e < 0].
struct SignSystem {
  linalg::Gf2Matrix matrix;
  linalg::BitVector signs;
};

SignSystem build_sign_system(const PartialTensor& tensor, const DesignMatrix& design);
SignSystem build_sign_system(const PartialTensor& tensor);

/// Factor vectors from per-column magnitudes and phases; pinned components
/// are exactly 1.
RankOneFactors assemble_factors(const DesignMatrix& design, std::span<const std::size_t> dims,
                                const MagnitudeSolution& magnitudes,
                                std::span<const Rational> column_phases);

enum class RealStatus { NoSolutionMagnitude, NoSolutionSign, Solutions };

std::string_view to_string(RealStatus status) noexcept;

struct RealSolveOptions {
  MagnitudeOptions magnitudes;
  /// Sign kernels of larger dimension are reported by count and generators.
  std::size_t enumeration_cap_bits = 20;
};

struct RealSolveResult {
  RealStatus status = RealStatus::NoSolutionMagnitude;
  SolutionCount count;
  SolutionSet solutions;
  /// False when the count exceeds the enumeration cap.
  bool materialized = true;
  std::size_t sign_kernel_dim = 0;
  std::vector<linalg::BitVector> sign_kernel_basis;
  MagnitudeSolution magnitudes;
  PatternReport pattern;
};

RealSolveResult solve_real(const PartialTensor& tensor, const RealSolveOptions& options = {});

/// Oracle: exhaustive search over all 2^unknowns sign assignments, checked
/// row by row against the observed signs, combined with the magnitude
/// system. Infinite when the pattern is degenerate and anything survives.
SolutionCount brute_force_signs(const PartialTensor& tensor, std::size_t max_unknowns = 24);

}  // namespace rankone

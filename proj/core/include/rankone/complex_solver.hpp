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
#include <optional>
#include <vector>

#include "rankone/exact_linalg.hpp"
#include "rankone/model.hpp"
#include "rankone/pattern.hpp"
#include "rankone/real_solver.hpp"

namespace rankone {

/// A * phi = t (mod 1) over the design matrix, t_e = phase of Q_e in turns.
struct PhaseSystem {
  linalg::IntMatrix matrix;
  std::vector<Rational> targets;
};

PhaseSystem build_phase_system(const PartialTensor& tensor, const DesignMatrix& design);

/// Phase vector over the design columns, in turns.
using PhaseVector = std::vector<Rational>;

struct PhaseSolution {
  bool consistent = false;
  PhaseVector particular;
  /// Finite-order kernel generators (columns of V over d_i, reduced mod 1)
  /// with their orders d_i > 1.
  std::vector<PhaseVector> generators;
  std::vector<BigInt> orders;
  /// Integer directions of a continuous kernel; empty under condition (A).
  std::vector<std::vector<BigInt>> free_directions;
  std::vector<BigInt> divisors;

  /// Number of finite kernel elements, the product of the nonzero divisors.
  BigInt torsion_order() const;
};

/// Solves the congruence through the Smith form U A V = D: with s = U t,
/// consistent iff s_i is an integer for every i beyond the rank; then
/// psi_i = s_i / d_i and phi = V psi (mod 1).
PhaseSolution solve_phase_system(const PhaseSystem& system);

/// Every element of the finite kernel (including zero) in canonical order,
/// or nullopt when there are more than `cap`.
std::optional<std::vector<PhaseVector>> kernel_elements(const PhaseSolution& solution,
                                                        std::size_t cap);

enum class ComplexStatus { NoSolutionMagnitude, NoSolutionPhase, Solutions };

std::string_view to_string(ComplexStatus status) noexcept;

struct ComplexSolveOptions {
  MagnitudeOptions magnitudes;
  std::size_t materialization_cap = 4096;
};

struct ComplexSolveResult {
  ComplexStatus status = ComplexStatus::NoSolutionMagnitude;
  SolutionCount count;
  std::optional<RankOneFactors> base;
  /// Canonically ordered kernel; the solutions are base + each element.
  std::vector<PhaseVector> kernel_elements;
  std::vector<BigInt> divisors;
  SolutionSet solutions;
  bool materialized = true;
  PhaseSolution phases;
  MagnitudeSolution magnitudes;
  PatternReport pattern;
};

ComplexSolveResult count_complex(const PartialTensor& tensor,
                                 const ComplexSolveOptions& options = {});

/// Cap on m for brute_force_sigma: RANKONE_ORACLE_CAP, or 16.
std::size_t default_oracle_cap();

/// Oracle: for every sigma in {0, ..., d-1}^m solve A phi = t + sigma exactly
/// and keep the solutions with every phase in [0, 1). Independent of the
/// Smith-form path.
SolutionSet brute_force_sigma(const PartialTensor& tensor, std::size_t cap = default_oracle_cap());

/// A nontrivial element of the phase kernel, the first in canonical order
/// (or the first generator when the kernel exceeds the materialization cap);
/// nullopt proves uniqueness over C. Requires condition (A) and a consistent
/// tensor.
std::optional<PhaseVector> non_uniqueness_witness(const PartialTensor& tensor);

}  // namespace rankone

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
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rankone/rational.hpp"

namespace rankone {

/// 1-based coordinates, one per tensor mode.
using MultiIndex = std::vector<std::size_t>;

std::string to_string(const MultiIndex& index);

/// Exact nonzero complex scalar magnitude * e^{2 pi i phase_turns}.
struct PolarScalar {
  Rational magnitude;
  Rational phase_turns;

  /// Validates magnitude > 0 and reduces the phase into [0, 1).
  static PolarScalar make(Rational magnitude, Rational phase_turns = Rational(0));

  bool is_real() const;
  bool operator==(const PolarScalar& other) const {
    return magnitude == other.magnitude && phase_turns == other.phase_turns;
  }
};

struct FloatPolar {
  double magnitude = 1.0;
  double phase_turns = 0.0;

  static FloatPolar make(double magnitude, double phase_turns = 0.0);

  bool operator==(const FloatPolar&) const = default;
};

/// Observed index set Omega together with the tensor shape. Indices are kept
/// in lexicographic order; that order numbers the observations everywhere.
class ObservationPattern {
 public:
  ObservationPattern(std::vector<std::size_t> dims, std::vector<MultiIndex> indices);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t order() const noexcept { return dims_.size(); }
  std::size_t m() const noexcept { return indices_.size(); }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  const MultiIndex& index(std::size_t e) const { return indices_.at(e); }

  std::optional<std::size_t> position(const MultiIndex& index) const;
  bool contains(const MultiIndex& index) const { return position(index).has_value(); }

  /// Mode k of the result is mode perm[k] of this pattern.
  ObservationPattern permuted(std::span<const std::size_t> perm) const;

  bool operator==(const ObservationPattern&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<MultiIndex> indices_;
};

enum class ValueMode { Exact, Float };

std::string_view to_string(ValueMode mode) noexcept;

class PartialTensor {
 public:
  static PartialTensor exact(std::vector<std::size_t> dims,
                             std::vector<std::pair<MultiIndex, PolarScalar>> entries);
  static PartialTensor floating(std::vector<std::size_t> dims,
                                std::vector<std::pair<MultiIndex, FloatPolar>> entries);

  const ObservationPattern& pattern() const noexcept { return pattern_; }
  const std::vector<std::size_t>& dims() const noexcept { return pattern_.dims(); }
  std::size_t m() const noexcept { return pattern_.m(); }
  ValueMode mode() const noexcept {
    return std::holds_alternative<std::vector<PolarScalar>>(values_) ? ValueMode::Exact
                                                                     : ValueMode::Float;
  }

  const std::vector<PolarScalar>& exact_values() const;
  const std::vector<FloatPolar>& float_values() const;

  double magnitude(std::size_t e) const;
  double log_magnitude(std::size_t e) const;
  /// Float-mode phases are taken at their exact binary value.
  Rational phase_turns(std::size_t e) const;
  bool is_real(std::size_t e) const;
  bool all_real() const;
  bool all_positive() const;

  /// Complex conjugate of every observed value.
  PartialTensor conjugated() const;
  PartialTensor permuted(std::span<const std::size_t> perm) const;

  bool operator==(const PartialTensor& other) const {
    return pattern_ == other.pattern_ && values_ == other.values_;
  }

 private:
  using Values = std::variant<std::vector<PolarScalar>, std::vector<FloatPolar>>;
  PartialTensor(ObservationPattern pattern, Values values)
      : pattern_(std::move(pattern)), values_(std::move(values)) {}

  ObservationPattern pattern_;
  Values values_;
};

/// Sparse exponent vector r over observation numbers e: a magnitude equal to
/// prod_e |Q_e|^{r_e}. An empty vector is the magnitude 1.
using ExponentVector = std::vector<std::pair<std::size_t, Rational>>;

struct FactorEntry {
  double magnitude = 1.0;
  std::optional<ExponentVector> exponents;
  Rational phase_turns;
};

/// d factor vectors in the normalized gauge: the first component of modes
/// 1..d-1 is exactly 1.
class RankOneFactors {
 public:
  explicit RankOneFactors(std::vector<std::vector<FactorEntry>> vectors);

  static RankOneFactors ones(std::span<const std::size_t> dims);
  /// Rescales arbitrary positive factor vectors into the normalized gauge.
  static RankOneFactors from_magnitudes(const std::vector<std::vector<double>>& magnitudes);

  std::size_t order() const noexcept { return vectors_.size(); }
  std::vector<std::size_t> dims() const;
  const std::vector<std::vector<FactorEntry>>& vectors() const noexcept { return vectors_; }
  /// mode is 0-based, index is 1-based.
  const FactorEntry& entry(std::size_t mode, std::size_t index) const {
    return vectors_.at(mode).at(index - 1);
  }

  /// All phases, mode-major; the key of the canonical solution order.
  std::vector<Rational> phase_signature() const;

 private:
  std::vector<std::vector<FactorEntry>> vectors_;
};

struct EvaluatedValue {
  double magnitude = 1.0;
  Rational phase_turns;
};

EvaluatedValue evaluate(const RankOneFactors& factors, const MultiIndex& index);

/// Lexicographic on phase signatures, then on magnitudes.
bool canonical_less(const RankOneFactors& a, const RankOneFactors& b);

/// Either a finite count or an infinite (positive-dimensional) family.
struct SolutionCount {
  bool infinite = false;
  BigInt value;

  static SolutionCount finite(BigInt n) { return {false, std::move(n)}; }
  static SolutionCount unbounded() { return {true, BigInt(0)}; }

  bool is_zero() const { return !infinite && value == 0; }
  bool operator==(const SolutionCount& other) const {
    return infinite == other.infinite && (infinite || value == other.value);
  }
};

std::string to_string(const SolutionCount& count);

/// Canonically ordered solutions. When `infinite` is set the list holds one
/// representative of the family.
struct SolutionSet {
  bool infinite = false;
  std::vector<RankOneFactors> solutions;
};

}  // namespace rankone

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

namespace rankone {

/// Unknown of the log-linear system: component `index` (1-based) of factor
/// `mode` (0-based).
struct ColumnLabel {
  std::size_t mode = 0;
  std::size_t index = 1;
  bool operator==(const ColumnLabel&) const = default;
};

/// 0/1 incidence matrix of x^{(1)}_{i_1} + ... + x^{(d)}_{i_d} = q over the
/// observed indices, with the first component of modes 1..d-1 pinned to zero
/// and dropped. Rows follow the pattern's lexicographic order; columns are
/// mode-major, then by index.
class DesignMatrix {
 public:
  explicit DesignMatrix(const ObservationPattern& pattern);

  std::size_t rows() const noexcept { return row_labels_.size(); }
  std::size_t cols() const noexcept { return column_labels_.size(); }
  const std::vector<ColumnLabel>& column_labels() const noexcept { return column_labels_; }
  const std::vector<MultiIndex>& row_labels() const noexcept { return row_labels_; }

  /// Column positions of the ones in row e, increasing.
  const std::vector<std::size_t>& row_support(std::size_t e) const { return support_.at(e); }

  /// Column of (mode, index), or nullopt for a pinned component.
  std::optional<std::size_t> column_of(std::size_t mode, std::size_t index) const;

  linalg::IntMatrix integer_matrix() const;
  linalg::Gf2Matrix mod2() const;

 private:
  std::vector<ColumnLabel> column_labels_;
  std::vector<MultiIndex> row_labels_;
  std::vector<std::vector<std::size_t>> support_;
  std::vector<std::vector<std::optional<std::size_t>>> column_lookup_;
};

inline DesignMatrix build_design_matrix(const ObservationPattern& pattern) {
  return DesignMatrix(pattern);
}

struct PatternReport {
  std::size_t m = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  bool condition_a = false;
  std::size_t dof = 0;
  bool overdetermined = false;

  bool operator==(const PatternReport&) const = default;
};

/// Rank structure of the design matrix, shared by the solvers.
struct PatternAnalysis {
  DesignMatrix design;
  linalg::RowBasis basis;
  PatternReport report;
};

/// Exact local-uniqueness test: condition (A) holds iff the design matrix
/// has full column rank.
PatternAnalysis analyze_structure(const ObservationPattern& pattern);

inline PatternReport analyze_pattern(const ObservationPattern& pattern) {
  return analyze_structure(pattern).report;
}

}  // namespace rankone

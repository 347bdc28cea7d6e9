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

#include "rankone/pattern.hpp"

namespace rankone {

DesignMatrix::DesignMatrix(const ObservationPattern& pattern) {
  const auto& dims = pattern.dims();
  const std::size_t d = dims.size();
  column_lookup_.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    column_lookup_[k].assign(dims[k], std::nullopt);
    for (std::size_t i = 1; i <= dims[k]; ++i) {
      if (i == 1 && k + 1 < d) continue;
      column_lookup_[k][i - 1] = column_labels_.size();
      column_labels_.push_back({k, i});
    }
  }
  row_labels_ = pattern.indices();
  support_.reserve(row_labels_.size());
  for (const auto& idx : row_labels_) {
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < d; ++k) {
      if (auto c = column_lookup_[k][idx[k] - 1]) cols.push_back(*c);
    }
    support_.push_back(std::move(cols));
  }
}

std::optional<std::size_t> DesignMatrix::column_of(std::size_t mode, std::size_t index) const {
  return column_lookup_.at(mode).at(index - 1);
}

linalg::IntMatrix DesignMatrix::integer_matrix() const {
  linalg::IntMatrix out(rows(), cols());
  for (std::size_t e = 0; e < rows(); ++e) {
    for (auto c : support_[e]) out(e, c) = 1;
  }
  return out;
}

linalg::Gf2Matrix DesignMatrix::mod2() const {
  linalg::Gf2Matrix out(rows(), cols());
  for (std::size_t e = 0; e < rows(); ++e) {
    for (auto c : support_[e]) out.set(e, c, true);
  }
  return out;
}

PatternAnalysis analyze_structure(const ObservationPattern& pattern) {
  DesignMatrix design(pattern);
  auto basis = linalg::independent_rows(design.integer_matrix());
  PatternReport report;
  report.m = design.rows();
  report.unknowns = design.cols();
  report.rank = basis.rank();
  report.condition_a = report.rank == report.unknowns;
  report.dof = report.unknowns - report.rank;
  report.overdetermined = report.unknowns < report.m;
  return PatternAnalysis{std::move(design), std::move(basis), report};
}

}  // namespace rankone

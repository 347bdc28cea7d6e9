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

#include "rankone/model.hpp"

namespace rankone {

struct SolutionCheck {
  bool phases_exact = true;
  double max_relative_magnitude_error = 0.0;

  bool ok(double tolerance = 1e-9) const {
    return phases_exact && max_relative_magnitude_error <= tolerance;
  }
};

/// Compares evaluate(factors, idx) with every observation: phases exactly,
/// magnitudes relatively in floating point.
SolutionCheck check_solution(const PartialTensor& tensor, const RankOneFactors& factors);

/// Symbolic check for exact tensors: every component must carry an exponent
/// vector, and prod of |Q_s|^{r_s} over an observation's components must equal
/// |Q_e| exactly (compared over a coprime base of the magnitudes).
bool check_solution_exact(const PartialTensor& tensor, const RankOneFactors& factors);

}  // namespace rankone

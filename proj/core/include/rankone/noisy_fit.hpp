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
#include <vector>

#include "rankone/model.hpp"

namespace rankone {

/// Log-domain least-squares rank-one fit.
struct FitResult {
  RankOneFactors factors;
  /// Sum of squared log residuals.
  double objective = 0.0;
  /// q_e - (A x)_e per observation, in pattern order.
  std::vector<double> residuals;
  /// (Q_e - Qhat_e) / Qhat_e, the estimated relative disturbance.
  std::vector<double> relative_disturbance;
  /// Per design column.
  std::vector<double> log_values;
  /// Norm of the objective gradient 2 A^T (A x - q) at the solution.
  double gradient_norm = 0.0;
  double q_norm = 0.0;
};

/// Minimizes sum_e (q_e - x_{i_1} - ... - x_{i_d})^2 with pinned components
/// zero, through a Cholesky factorization of the normal equations plus one
/// step of iterative refinement. Requires strictly positive real values and
/// condition (A).
FitResult fit_least_squares(const PartialTensor& tensor);

/// Objective of the log least-squares problem at arbitrary per-column log
/// values; used for finite-difference checks.
double fit_objective(const PartialTensor& tensor, const std::vector<double>& log_values);

enum class NoiseDistribution { UniformSymmetric };

/// Noise is drawn from std::mt19937_64 seeded with `seed`; each draw maps
/// its 53 high bits to u in [0, 1) and yields amplitude * (2u - 1).
struct NoiseSpec {
  double amplitude = 0.0;
  std::uint64_t seed = 0;
  NoiseDistribution distribution = NoiseDistribution::UniformSymmetric;
};

/// Q_e = Q*_e + eps_e over the pattern, as a float-mode tensor. Requires
/// positive factors and amplitude < min_e Q*_e.
PartialTensor generate_noisy(const RankOneFactors& factors, const ObservationPattern& pattern,
                             const NoiseSpec& noise);

struct FitQuality {
  double max_factor_error = 0.0;
  double max_entry_error = 0.0;
};

/// Componentwise relative errors after bringing both factor sets into the
/// normalized gauge; entries range over the full tensor.
FitQuality fit_quality(const RankOneFactors& fitted, const RankOneFactors& truth);
inline FitQuality fit_quality(const FitResult& fit, const RankOneFactors& truth) {
  return fit_quality(fit.factors, truth);
}

}  // namespace rankone

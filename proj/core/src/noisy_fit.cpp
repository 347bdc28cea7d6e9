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

#include "rankone/noisy_fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "rankone/error.hpp"
#include "rankone/pattern.hpp"
#include "rankone/real_solver.hpp"

namespace rankone {
namespace {

Eigen::MatrixXd dense_design(const DesignMatrix& design) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(design.rows()),
                                            static_cast<Eigen::Index>(design.cols()));
  for (std::size_t e = 0; e < design.rows(); ++e) {
    for (auto c : design.row_support(e)) a(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(c)) = 1.0;
  }
  return a;
}

Eigen::VectorXd log_observations(const PartialTensor& tensor) {
  Eigen::VectorXd q(static_cast<Eigen::Index>(tensor.m()));
  for (std::size_t e = 0; e < tensor.m(); ++e) q(static_cast<Eigen::Index>(e)) = tensor.log_magnitude(e);
  return q;
}

void require_positive(const PartialTensor& tensor) {
  for (std::size_t e = 0; e < tensor.m(); ++e) {
    if (tensor.phase_turns(e) != 0) {
      throw Error(ErrorCode::NonPositiveValue,
                  "entry " + to_string(tensor.pattern().index(e)) + " is not a positive real");
    }
  }
}

}  // namespace

FitResult fit_least_squares(const PartialTensor& tensor) {
  require_positive(tensor);
  auto analysis = analyze_structure(tensor.pattern());
  if (!analysis.report.condition_a) {
    throw Error(ErrorCode::ConditionAViolated,
                "design matrix rank " + std::to_string(analysis.report.rank) + " < " +
                    std::to_string(analysis.report.unknowns) + " unknowns (dof " +
                    std::to_string(analysis.report.dof) + ")");
  }
  const auto& design = analysis.design;
  const Eigen::MatrixXd a = dense_design(design);
  const Eigen::VectorXd q = log_observations(tensor);
  const Eigen::MatrixXd normal = a.transpose() * a;
  const Eigen::VectorXd rhs = a.transpose() * q;
  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::ConditionAViolated, "normal equations are not positive definite");
  }
  Eigen::VectorXd x = llt.solve(rhs);
  x += llt.solve(rhs - normal * x);

  FitResult out{RankOneFactors::ones(tensor.dims()), 0.0, {}, {}, {}, 0.0, q.norm()};
  const Eigen::VectorXd fitted = a * x;
  const Eigen::VectorXd residual = q - fitted;
  out.objective = residual.squaredNorm();
  out.gradient_norm = (2.0 * a.transpose() * (fitted - q)).norm();
  out.log_values.assign(x.data(), x.data() + x.size());
  for (std::size_t e = 0; e < tensor.m(); ++e) {
    const auto i = static_cast<Eigen::Index>(e);
    out.residuals.push_back(residual(i));
    const double predicted = std::exp(fitted(i));
    out.relative_disturbance.push_back((tensor.magnitude(e) - predicted) / predicted);
  }
  MagnitudeSolution mags;
  mags.consistent = true;
  mags.log_values = out.log_values;
  std::vector<Rational> zero(design.cols(), Rational(0));
  out.factors = assemble_factors(design, tensor.dims(), mags, zero);
  return out;
}

double fit_objective(const PartialTensor& tensor, const std::vector<double>& log_values) {
  DesignMatrix design(tensor.pattern());
  if (log_values.size() != design.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "one log value per unknown expected");
  }
  double total = 0.0;
  for (std::size_t e = 0; e < tensor.m(); ++e) {
    double r = tensor.log_magnitude(e);
    for (auto c : design.row_support(e)) r -= log_values[c];
    total += r * r;
  }
  return total;
}

PartialTensor generate_noisy(const RankOneFactors& factors, const ObservationPattern& pattern,
                             const NoiseSpec& noise) {
  if (factors.dims() != pattern.dims()) {
    throw Error(ErrorCode::DimensionMismatch, "factor shapes do not match the pattern");
  }
  if (!(noise.amplitude >= 0.0) || !std::isfinite(noise.amplitude)) {
    throw Error(ErrorCode::InvalidSpec, "noise amplitude must be a finite value >= 0");
  }
  std::vector<double> truth;
  for (const auto& idx : pattern.indices()) {
    auto value = evaluate(factors, idx);
    if (value.phase_turns != 0) {
      throw Error(ErrorCode::NonPositiveValue, "noisy generation needs positive factors");
    }
    truth.push_back(value.magnitude);
  }
  const double smallest = *std::min_element(truth.begin(), truth.end());
  if (noise.amplitude >= smallest) {
    throw Error(ErrorCode::InvalidSpec, "amplitude " + std::to_string(noise.amplitude) +
                                            " would allow nonpositive values (min entry " +
                                            std::to_string(smallest) + ")");
  }
  std::mt19937_64 rng(noise.seed);
  std::vector<std::pair<MultiIndex, FloatPolar>> entries;
  for (std::size_t e = 0; e < pattern.m(); ++e) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double eps = noise.amplitude * (2.0 * u - 1.0);
    entries.emplace_back(pattern.index(e), FloatPolar{truth[e] + eps, 0.0});
  }
  return PartialTensor::floating(pattern.dims(), std::move(entries));
}

FitQuality fit_quality(const RankOneFactors& fitted, const RankOneFactors& truth) {
  if (fitted.dims() != truth.dims()) throw Error(ErrorCode::DimensionMismatch, "fit_quality shapes");
  auto magnitudes = [](const RankOneFactors& f) {
    std::vector<std::vector<double>> out;
    for (const auto& v : f.vectors()) {
      std::vector<double> m;
      for (const auto& e : v) m.push_back(e.magnitude);
      out.push_back(std::move(m));
    }
    return out;
  };
  const auto a = RankOneFactors::from_magnitudes(magnitudes(fitted));
  const auto b = RankOneFactors::from_magnitudes(magnitudes(truth));
  FitQuality out;
  for (std::size_t k = 0; k < a.order(); ++k) {
    for (std::size_t i = 0; i < a.vectors()[k].size(); ++i) {
      const double x = a.vectors()[k][i].magnitude;
      const double y = b.vectors()[k][i].magnitude;
      out.max_factor_error = std::max(out.max_factor_error, std::abs(x - y) / y);
    }
  }
  const auto dims = a.dims();
  MultiIndex idx(dims.size(), 1);
  while (true) {
    const double x = evaluate(a, idx).magnitude;
    const double y = evaluate(b, idx).magnitude;
    out.max_entry_error = std::max(out.max_entry_error, std::abs(x - y) / y);
    std::size_t k = 0;
    while (k < dims.size() && ++idx[k] > dims[k]) idx[k++] = 1;
    if (k == dims.size()) break;
  }
  return out;
}

}  // namespace rankone

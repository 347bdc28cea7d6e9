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

#include "rankone/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rankone/error.hpp"

namespace rankone {

std::string to_string(const MultiIndex& index) {
  std::string out = "(";
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(index[k]);
  }
  return out + ")";
}

PolarScalar PolarScalar::make(Rational magnitude, Rational phase_turns) {
  if (magnitude == 0) throw Error(ErrorCode::NonzeroViolation, "observed value is zero");
  if (magnitude < 0) {
    magnitude = -magnitude;
    phase_turns += Rational(1, 2);
  }
  return PolarScalar{std::move(magnitude), mod_one(phase_turns)};
}

bool PolarScalar::is_real() const { return phase_turns == 0 || phase_turns == Rational(1, 2); }

FloatPolar FloatPolar::make(double magnitude, double phase_turns) {
  if (!std::isfinite(magnitude) || !std::isfinite(phase_turns)) {
    throw Error(ErrorCode::Syntax, "non-finite observed value");
  }
  if (magnitude == 0.0) throw Error(ErrorCode::NonzeroViolation, "observed value is zero");
  if (magnitude < 0.0) {
    magnitude = -magnitude;
    phase_turns += 0.5;
  }
  phase_turns -= std::floor(phase_turns);
  if (phase_turns >= 1.0) phase_turns = 0.0;
  return FloatPolar{magnitude, phase_turns};
}

ObservationPattern::ObservationPattern(std::vector<std::size_t> dims,
                                       std::vector<MultiIndex> indices)
    : dims_(std::move(dims)), indices_(std::move(indices)) {
  if (dims_.size() < 2) {
    throw Error(ErrorCode::DimensionMismatch, "tensor order must be at least 2");
  }
  for (std::size_t n : dims_) {
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "dimensions must be positive");
  }
  if (indices_.empty()) throw Error(ErrorCode::EmptyPattern, "no observed entries");
  for (const auto& idx : indices_) {
    if (idx.size() != dims_.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "index " + to_string(idx) + " has wrong number of coordinates");
    }
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 1 || idx[k] > dims_[k]) {
        throw Error(ErrorCode::IndexOutOfRange, "index " + to_string(idx) + " out of range");
      }
    }
  }
  std::sort(indices_.begin(), indices_.end());
  if (auto dup = std::adjacent_find(indices_.begin(), indices_.end()); dup != indices_.end()) {
    throw Error(ErrorCode::DuplicateIndex, "index " + to_string(*dup) + " observed twice");
  }
}

std::optional<std::size_t> ObservationPattern::position(const MultiIndex& index) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index) return std::nullopt;
  return static_cast<std::size_t>(it - indices_.begin());
}

namespace {

void check_permutation(std::span<const std::size_t> perm, std::size_t order) {
  std::vector<std::size_t> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> identity(order);
  std::iota(identity.begin(), identity.end(), 0);
  if (sorted != identity) throw Error(ErrorCode::DimensionMismatch, "not a mode permutation");
}

MultiIndex permute_index(const MultiIndex& idx, std::span<const std::size_t> perm) {
  MultiIndex out(idx.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out[k] = idx[perm[k]];
  return out;
}

template <typename Value>
std::pair<ObservationPattern, std::vector<Value>> sort_entries(
    std::vector<std::size_t> dims, std::vector<std::pair<MultiIndex, Value>> entries) {
  std::vector<MultiIndex> indices;
  indices.reserve(entries.size());
  for (const auto& [idx, value] : entries) indices.push_back(idx);
  ObservationPattern pattern(std::move(dims), std::move(indices));
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Value> values;
  values.reserve(entries.size());
  for (auto& [idx, value] : entries) values.push_back(std::move(value));
  return {std::move(pattern), std::move(values)};
}

}  // namespace

ObservationPattern ObservationPattern::permuted(std::span<const std::size_t> perm) const {
  check_permutation(perm, order());
  std::vector<std::size_t> dims(order());
  for (std::size_t k = 0; k < perm.size(); ++k) dims[k] = dims_[perm[k]];
  std::vector<MultiIndex> indices;
  indices.reserve(indices_.size());
  for (const auto& idx : indices_) indices.push_back(permute_index(idx, perm));
  return ObservationPattern(std::move(dims), std::move(indices));
}

std::string_view to_string(ValueMode mode) noexcept {
  return mode == ValueMode::Exact ? "exact" : "float";
}

PartialTensor PartialTensor::exact(std::vector<std::size_t> dims,
                                   std::vector<std::pair<MultiIndex, PolarScalar>> entries) {
  for (auto& [idx, value] : entries) {
    if (value.magnitude <= 0) {
      throw Error(ErrorCode::NonzeroViolation, "entry " + to_string(idx) + " has zero magnitude");
    }
    value = PolarScalar::make(value.magnitude, value.phase_turns);
  }
  auto [pattern, values] = sort_entries(std::move(dims), std::move(entries));
  return PartialTensor(std::move(pattern), std::move(values));
}

PartialTensor PartialTensor::floating(std::vector<std::size_t> dims,
                                      std::vector<std::pair<MultiIndex, FloatPolar>> entries) {
  for (auto& [idx, value] : entries) {
    if (!(value.magnitude > 0.0)) {
      throw Error(ErrorCode::NonzeroViolation, "entry " + to_string(idx) + " has zero magnitude");
    }
    value = FloatPolar::make(value.magnitude, value.phase_turns);
  }
  auto [pattern, values] = sort_entries(std::move(dims), std::move(entries));
  return PartialTensor(std::move(pattern), std::move(values));
}

const std::vector<PolarScalar>& PartialTensor::exact_values() const {
  if (auto* v = std::get_if<std::vector<PolarScalar>>(&values_)) return *v;
  throw Error(ErrorCode::Precondition, "tensor holds float values");
}

const std::vector<FloatPolar>& PartialTensor::float_values() const {
  if (auto* v = std::get_if<std::vector<FloatPolar>>(&values_)) return *v;
  throw Error(ErrorCode::Precondition, "tensor holds exact values");
}

double PartialTensor::magnitude(std::size_t e) const {
  if (mode() == ValueMode::Exact) return to_double(exact_values().at(e).magnitude);
  return float_values().at(e).magnitude;
}

double PartialTensor::log_magnitude(std::size_t e) const {
  if (mode() == ValueMode::Exact) {
    const auto& mag = exact_values().at(e).magnitude;
    return log_of(mag.get_num()) - log_of(mag.get_den());
  }
  return std::log(float_values().at(e).magnitude);
}

Rational PartialTensor::phase_turns(std::size_t e) const {
  if (mode() == ValueMode::Exact) return exact_values().at(e).phase_turns;
  return exact_from_double(float_values().at(e).phase_turns);
}

bool PartialTensor::is_real(std::size_t e) const {
  if (mode() == ValueMode::Exact) return exact_values().at(e).is_real();
  double p = float_values().at(e).phase_turns;
  return p == 0.0 || p == 0.5;
}

bool PartialTensor::all_real() const {
  for (std::size_t e = 0; e < m(); ++e) {
    if (!is_real(e)) return false;
  }
  return true;
}

bool PartialTensor::all_positive() const {
  for (std::size_t e = 0; e < m(); ++e) {
    if (phase_turns(e) != 0) return false;
  }
  return true;
}

PartialTensor PartialTensor::conjugated() const {
  if (mode() == ValueMode::Exact) {
    std::vector<std::pair<MultiIndex, PolarScalar>> entries;
    for (std::size_t e = 0; e < m(); ++e) {
      const auto& v = exact_values()[e];
      entries.emplace_back(pattern_.index(e), PolarScalar::make(v.magnitude, -v.phase_turns));
    }
    return exact(dims(), std::move(entries));
  }
  std::vector<std::pair<MultiIndex, FloatPolar>> entries;
  for (std::size_t e = 0; e < m(); ++e) {
    const auto& v = float_values()[e];
    entries.emplace_back(pattern_.index(e), FloatPolar::make(v.magnitude, -v.phase_turns));
  }
  return floating(dims(), std::move(entries));
}

PartialTensor PartialTensor::permuted(std::span<const std::size_t> perm) const {
  check_permutation(perm, pattern_.order());
  std::vector<std::size_t> new_dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims()[perm[k]];
  if (mode() == ValueMode::Exact) {
    std::vector<std::pair<MultiIndex, PolarScalar>> entries;
    for (std::size_t e = 0; e < m(); ++e) {
      entries.emplace_back(permute_index(pattern_.index(e), perm), exact_values()[e]);
    }
    return exact(std::move(new_dims), std::move(entries));
  }
  std::vector<std::pair<MultiIndex, FloatPolar>> entries;
  for (std::size_t e = 0; e < m(); ++e) {
    entries.emplace_back(permute_index(pattern_.index(e), perm), float_values()[e]);
  }
  return floating(std::move(new_dims), std::move(entries));
}

RankOneFactors::RankOneFactors(std::vector<std::vector<FactorEntry>> vectors)
    : vectors_(std::move(vectors)) {
  if (vectors_.size() < 2) throw Error(ErrorCode::DimensionMismatch, "need at least two modes");
  for (std::size_t k = 0; k < vectors_.size(); ++k) {
    if (vectors_[k].empty()) throw Error(ErrorCode::DimensionMismatch, "empty factor vector");
    for (auto& entry : vectors_[k]) {
      if (!(entry.magnitude > 0.0)) {
        throw Error(ErrorCode::NonzeroViolation, "factor components must be nonzero");
      }
      entry.phase_turns = mod_one(entry.phase_turns);
    }
    if (k + 1 < vectors_.size()) {
      const auto& first = vectors_[k].front();
      if (first.magnitude != 1.0 || first.phase_turns != 0) {
        throw Error(ErrorCode::Precondition,
                    "first component of mode " + std::to_string(k + 1) + " must be 1");
      }
    }
  }
}

RankOneFactors RankOneFactors::ones(std::span<const std::size_t> dims) {
  std::vector<std::vector<FactorEntry>> vectors;
  for (std::size_t n : dims) vectors.emplace_back(n, FactorEntry{1.0, ExponentVector{}, Rational(0)});
  return RankOneFactors(std::move(vectors));
}

RankOneFactors RankOneFactors::from_magnitudes(const std::vector<std::vector<double>>& magnitudes) {
  if (magnitudes.size() < 2) throw Error(ErrorCode::DimensionMismatch, "need at least two modes");
  std::vector<std::vector<FactorEntry>> vectors;
  double carried = 1.0;
  for (std::size_t k = 0; k < magnitudes.size(); ++k) {
    const auto& v = magnitudes[k];
    if (v.empty()) throw Error(ErrorCode::DimensionMismatch, "empty factor vector");
    for (double x : v) {
      if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorCode::NonPositiveValue, "factor magnitudes must be positive");
      }
    }
    bool last = k + 1 == magnitudes.size();
    double scale = last ? carried : 1.0 / v.front();
    if (!last) carried *= v.front();
    std::vector<FactorEntry> entries;
    for (std::size_t i = 0; i < v.size(); ++i) {
      double mag = (!last && i == 0) ? 1.0 : v[i] * scale;
      entries.push_back(FactorEntry{mag, std::nullopt, Rational(0)});
    }
    vectors.push_back(std::move(entries));
  }
  return RankOneFactors(std::move(vectors));
}

std::vector<std::size_t> RankOneFactors::dims() const {
  std::vector<std::size_t> out;
  for (const auto& v : vectors_) out.push_back(v.size());
  return out;
}

std::vector<Rational> RankOneFactors::phase_signature() const {
  std::vector<Rational> out;
  for (const auto& v : vectors_) {
    for (const auto& entry : v) out.push_back(entry.phase_turns);
  }
  return out;
}

EvaluatedValue evaluate(const RankOneFactors& factors, const MultiIndex& index) {
  if (index.size() != factors.order()) {
    throw Error(ErrorCode::DimensionMismatch, "index " + to_string(index) + " has wrong order");
  }
  EvaluatedValue out;
  Rational phase(0);
  for (std::size_t k = 0; k < index.size(); ++k) {
    const auto& entry = factors.entry(k, index[k]);
    out.magnitude *= entry.magnitude;
    phase += entry.phase_turns;
  }
  out.phase_turns = mod_one(phase);
  return out;
}

bool canonical_less(const RankOneFactors& a, const RankOneFactors& b) {
  auto pa = a.phase_signature();
  auto pb = b.phase_signature();
  if (pa != pb) return pa < pb;
  for (std::size_t k = 0; k < std::min(a.order(), b.order()); ++k) {
    const auto& va = a.vectors()[k];
    const auto& vb = b.vectors()[k];
    for (std::size_t i = 0; i < std::min(va.size(), vb.size()); ++i) {
      if (va[i].magnitude != vb[i].magnitude) return va[i].magnitude < vb[i].magnitude;
    }
  }
  return false;
}

std::string to_string(const SolutionCount& count) {
  return count.infinite ? std::string("infinite") : count.value.get_str();
}

}  // namespace rankone

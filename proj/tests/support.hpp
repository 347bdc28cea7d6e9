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

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rankone/rankone.hpp"

namespace rankone::testing {

using Rng = std::mt19937_64;

std::string fixture_path(const std::string& name);
PartialTensor load_fixture(const std::string& name);
std::string read_file(const std::string& path);

// Uniform integer in [lo, hi].
std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi);

// m distinct cells of dims (m is clamped to the number of cells).
ObservationPattern random_pattern(Rng& rng, const std::vector<std::size_t>& dims, std::size_t m);

// Random dims with each n_k in [1, max_dim].
std::vector<std::size_t> random_dims(Rng& rng, std::size_t order, std::size_t max_dim);

// Unit magnitudes, phases k/den with den drawn from `denominators`.
PartialTensor random_phase_tensor(Rng& rng, const ObservationPattern& pattern,
                                  const std::vector<long>& denominators);

// Exact values of a random rank-one tensor restricted to the pattern. Factor
// magnitudes are small positive rationals; phases k/den (den from
// `denominators`, {1} gives positive values, {1, 2} real signs).
struct PlantedTensor {
  PartialTensor tensor;
  std::vector<std::vector<PolarScalar>> truth;
};
PlantedTensor planted_tensor(Rng& rng, const ObservationPattern& pattern,
                             const std::vector<long>& denominators, bool unit_magnitudes);

// Phase signatures of a solution set, as a set.
std::set<std::vector<Rational>> phase_set(const std::vector<RankOneFactors>& solutions);

}  // namespace rankone::testing

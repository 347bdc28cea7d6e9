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

#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rankone::testing {

std::string fixture_path(const std::string& name) {
  return std::string(RANKONE_FIXTURE_DIR) + "/" + name;
}

PartialTensor load_fixture(const std::string& name) { return read_tensor(fixture_path(name)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

ObservationPattern random_pattern(Rng& rng, const std::vector<std::size_t>& dims, std::size_t m) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (m > total) m = total;
  std::set<std::size_t> picked;
  while (picked.size() < m) picked.insert(static_cast<std::size_t>(rng() % total));
  std::vector<MultiIndex> indices;
  for (auto linear : picked) {
    MultiIndex idx(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
      idx[k] = linear % dims[k] + 1;
      linear /= dims[k];
    }
    indices.push_back(std::move(idx));
  }
  return ObservationPattern(dims, std::move(indices));
}

std::vector<std::size_t> random_dims(Rng& rng, std::size_t order, std::size_t max_dim) {
  std::vector<std::size_t> dims(order);
  for (auto& d : dims) d = static_cast<std::size_t>(uniform(rng, 1, max_dim));
  return dims;
}

PartialTensor random_phase_tensor(Rng& rng, const ObservationPattern& pattern,
                                  const std::vector<long>& denominators) {
  std::vector<std::pair<MultiIndex, PolarScalar>> entries;
  for (const auto& idx : pattern.indices()) {
    const long den = denominators[rng() % denominators.size()];
    const long num = static_cast<long>(rng() % static_cast<std::uint64_t>(den));
    entries.emplace_back(idx, PolarScalar::make(Rational(1), Rational(num, den)));
    entries.back().second.phase_turns.canonicalize();
  }
  return PartialTensor::exact(pattern.dims(), std::move(entries));
}

PlantedTensor planted_tensor(Rng& rng, const ObservationPattern& pattern,
                             const std::vector<long>& denominators, bool unit_magnitudes) {
  PlantedTensor out{PartialTensor::exact(pattern.dims(), {{pattern.index(0), PolarScalar::make(Rational(1))}}),
                    {}};
  for (auto n : pattern.dims()) {
    std::vector<PolarScalar> v;
    for (std::size_t i = 0; i < n; ++i) {
      Rational mag(1);
      if (!unit_magnitudes) {
        mag = Rational(static_cast<long>(uniform(rng, 1, 9)), static_cast<long>(uniform(rng, 1, 9)));
        mag.canonicalize();
      }
      const long den = denominators[rng() % denominators.size()];
      Rational phase(static_cast<long>(rng() % static_cast<std::uint64_t>(den)), den);
      phase.canonicalize();
      v.push_back(PolarScalar::make(mag, phase));
    }
    out.truth.push_back(std::move(v));
  }
  std::vector<std::pair<MultiIndex, PolarScalar>> entries;
  for (const auto& idx : pattern.indices()) {
    Rational mag(1), phase(0);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      mag *= out.truth[k][idx[k] - 1].magnitude;
      phase += out.truth[k][idx[k] - 1].phase_turns;
    }
    entries.emplace_back(idx, PolarScalar::make(mag, phase));
  }
  out.tensor = PartialTensor::exact(pattern.dims(), std::move(entries));
  return out;
}

std::set<std::vector<Rational>> phase_set(const std::vector<RankOneFactors>& solutions) {
  std::set<std::vector<Rational>> out;
  for (const auto& s : solutions) out.insert(s.phase_signature());
  return out;
}

}  // namespace rankone::testing

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

#include "rankone/verify.hpp"

#include <cmath>
#include <map>

#include "rankone/error.hpp"
#include "rankone/exact_linalg.hpp"

namespace rankone {

SolutionCheck check_solution(const PartialTensor& tensor, const RankOneFactors& factors) {
  SolutionCheck out;
  for (std::size_t e = 0; e < tensor.m(); ++e) {
    const auto value = evaluate(factors, tensor.pattern().index(e));
    if (value.phase_turns != tensor.phase_turns(e)) out.phases_exact = false;
    const double expected = tensor.magnitude(e);
    out.max_relative_magnitude_error = std::max(
        out.max_relative_magnitude_error, std::abs(value.magnitude - expected) / expected);
  }
  return out;
}

bool check_solution_exact(const PartialTensor& tensor, const RankOneFactors& factors) {
  const auto& values = tensor.exact_values();
  std::vector<BigInt> parts;
  for (const auto& v : values) {
    parts.push_back(v.magnitude.get_num());
    parts.push_back(v.magnitude.get_den());
  }
  const auto base = linalg::coprime_base(parts);
  std::vector<std::vector<long>> val;
  for (const auto& v : values) {
    auto num = linalg::valuations(v.magnitude.get_num(), base);
    auto den = linalg::valuations(v.magnitude.get_den(), base);
    for (std::size_t b = 0; b < base.size(); ++b) num[b] -= den[b];
    val.push_back(std::move(num));
  }
  for (std::size_t e = 0; e < tensor.m(); ++e) {
    const auto& idx = tensor.pattern().index(e);
    std::map<std::size_t, Rational> combined;
    Rational phase(0);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& entry = factors.entry(k, idx[k]);
      if (!entry.exponents) {
        throw Error(ErrorCode::Precondition, "factor component lacks an exponent vector");
      }
      for (const auto& [s, r] : *entry.exponents) combined[s] += r;
      phase += entry.phase_turns;
    }
    if (mod_one(phase) != values[e].phase_turns) return false;
    for (std::size_t b = 0; b < base.size(); ++b) {
      Rational lhs(0);
      for (const auto& [s, r] : combined) lhs += r * Rational(val[s][b]);
      if (lhs != val[e][b]) return false;
    }
  }
  return true;
}

}  // namespace rankone

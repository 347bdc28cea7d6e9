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

#include "rankone/complex_solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>

#include "rankone/error.hpp"

namespace rankone {
namespace {

PhaseVector reduce_mod_one(PhaseVector v) {
  for (auto& x : v) x = mod_one(x);
  return v;
}

PhaseVector add_mod_one(const PhaseVector& a, const PhaseVector& b) {
  PhaseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_one(a[i] + b[i]);
  return out;
}

}  // namespace

PhaseSystem build_phase_system(const PartialTensor& tensor, const DesignMatrix& design) {
  PhaseSystem out{design.integer_matrix(), {}};
  out.targets.reserve(tensor.m());
  for (std::size_t e = 0; e < tensor.m(); ++e) out.targets.push_back(tensor.phase_turns(e));
  return out;
}

BigInt PhaseSolution::torsion_order() const {
  BigInt out = 1;
  for (const auto& d : orders) out *= d;
  return out;
}

PhaseSolution solve_phase_system(const PhaseSystem& system) {
  const auto& a = system.matrix;
  if (system.targets.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "phase targets do not match the design rows");
  }
  auto st = linalg::smith_with_rhs(a, system.targets);
  PhaseSolution out;
  out.divisors = st.divisors;
  const std::size_t rank = static_cast<std::size_t>(std::count_if(
      st.divisors.begin(), st.divisors.end(), [](const BigInt& d) { return d != 0; }));
  for (std::size_t i = rank; i < a.rows(); ++i) {
    if (!is_integer(st.rhs[i])) return out;
  }
  out.consistent = true;
  const std::size_t n = a.cols();
  std::vector<Rational> psi(n, Rational(0));
  for (std::size_t i = 0; i < rank; ++i) psi[i] = st.rhs[i] / Rational(st.divisors[i]);
  out.particular.assign(n, Rational(0));
  for (std::size_t row = 0; row < n; ++row) {
    Rational acc(0);
    for (std::size_t i = 0; i < rank; ++i) {
      if (st.v(row, i) != 0 && psi[i] != 0) acc += Rational(st.v(row, i)) * psi[i];
    }
    out.particular[row] = mod_one(acc);
  }
  for (std::size_t i = 0; i < rank; ++i) {
    if (st.divisors[i] == 1) continue;
    PhaseVector g(n);
    for (std::size_t row = 0; row < n; ++row) {
      g[row] = Rational(st.v(row, i), st.divisors[i]);
      g[row].canonicalize();
    }
    g = reduce_mod_one(std::move(g));
    out.generators.push_back(std::move(g));
    out.orders.push_back(st.divisors[i]);
  }
  for (std::size_t j = rank; j < n; ++j) out.free_directions.push_back(st.v.column(j));
  return out;
}

std::optional<std::vector<PhaseVector>> kernel_elements(const PhaseSolution& solution,
                                                        std::size_t cap) {
  const BigInt order = solution.torsion_order();
  if (order > cap) return std::nullopt;
  const std::size_t n = solution.particular.size();
  std::vector<PhaseVector> elements{PhaseVector(n, Rational(0))};
  for (std::size_t g = 0; g < solution.generators.size(); ++g) {
    const auto k = solution.orders[g].get_ui();
    std::vector<PhaseVector> next;
    next.reserve(elements.size() * k);
    for (const auto& base : elements) {
      PhaseVector current = base;
      for (unsigned long step = 0; step < k; ++step) {
        next.push_back(current);
        current = add_mod_one(current, solution.generators[g]);
      }
    }
    elements = std::move(next);
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

std::string_view to_string(ComplexStatus status) noexcept {
  switch (status) {
    case ComplexStatus::NoSolutionMagnitude: return "no_solution_magnitude";
    case ComplexStatus::NoSolutionPhase: return "no_solution_phase";
    case ComplexStatus::Solutions: return "solutions";
  }
  return "unknown";
}

ComplexSolveResult count_complex(const PartialTensor& tensor, const ComplexSolveOptions& options) {
  auto analysis = analyze_structure(tensor.pattern());
  ComplexSolveResult out;
  out.pattern = analysis.report;
  out.count = SolutionCount::finite(0);
  out.magnitudes = solve_magnitudes(tensor, analysis, options.magnitudes);
  out.phases = solve_phase_system(build_phase_system(tensor, analysis.design));
  out.divisors = out.phases.divisors;
  if (!out.magnitudes.consistent) {
    out.status = ComplexStatus::NoSolutionMagnitude;
    return out;
  }
  if (!out.phases.consistent) {
    out.status = ComplexStatus::NoSolutionPhase;
    return out;
  }
  out.status = ComplexStatus::Solutions;
  out.base = assemble_factors(analysis.design, tensor.dims(), out.magnitudes, out.phases.particular);
  if (!analysis.report.condition_a) {
    out.count = SolutionCount::unbounded();
    out.solutions.infinite = true;
    out.solutions.solutions.push_back(*out.base);
    return out;
  }
  out.count = SolutionCount::finite(out.phases.torsion_order());
  auto elements = kernel_elements(out.phases, options.materialization_cap);
  if (!elements) {
    out.materialized = false;
    out.solutions.solutions.push_back(*out.base);
    return out;
  }
  out.kernel_elements = std::move(*elements);
  for (const auto& k : out.kernel_elements) {
    out.solutions.solutions.push_back(assemble_factors(
        analysis.design, tensor.dims(), out.magnitudes, add_mod_one(out.phases.particular, k)));
  }
  std::sort(out.solutions.solutions.begin(), out.solutions.solutions.end(), canonical_less);
  return out;
}

std::size_t default_oracle_cap() {
  if (const char* env = std::getenv("RANKONE_ORACLE_CAP")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 16;
}

namespace {

/// The enumeration itself, over an integer type wide enough for
/// delta * L * (t + sigma) products.
template <typename Int>
class SigmaEnumerator {
 public:
  SigmaEnumerator(const DesignMatrix& design, const linalg::RowBasis& basis,
                  const std::vector<std::vector<BigInt>>& inverse_num, const BigInt& delta,
                  const std::vector<BigInt>& scaled_targets, const BigInt& lcm, std::size_t order)
      : design_(design), basis_(basis), order_(order) {
    convert(delta, delta_);
    convert(lcm, lcm_);
    for (const auto& row : inverse_num) {
      std::vector<Int> r;
      for (const auto& x : row) r.push_back(from(x));
      inverse_.push_back(std::move(r));
    }
    for (const auto& t : scaled_targets) targets_.push_back(from(t));
    position_.assign(design.cols(), -1);
    for (std::size_t k = 0; k < basis.rank(); ++k) position_[basis.pivot_columns[k]] = static_cast<int>(k);
    std::vector<bool> in_basis(design.rows(), false);
    for (auto e : basis.rows) in_basis[e] = true;
    for (std::size_t e = 0; e < design.rows(); ++e) {
      if (!in_basis[e]) others_.push_back(e);
    }
  }

  /// Calls `found(y)` with phi_P = y / (delta * L) for every sigma whose
  /// system is consistent with all phases in [0, 1).
  template <typename Fn>
  void run(Fn&& found) {
    const std::size_t r = basis_.rank();
    const Int scale = delta_ * lcm_;
    std::vector<unsigned> sigma_s(r, 0);
    std::vector<unsigned> sigma_o(others_.size(), 0);
    std::vector<Int> y(r);
    while (true) {
      // phi_P * delta * L = M (T_S + L sigma_S)
      bool in_range = true;
      for (std::size_t k = 0; k < r; ++k) {
        Int acc = 0;
        for (std::size_t l = 0; l < r; ++l) {
          if (inverse_[k][l] != 0) {
            acc += inverse_[k][l] * (targets_[basis_.rows[l]] + lcm_ * Int(sigma_s[l]));
          }
        }
        y[k] = acc;
        if (acc < 0 || acc >= scale) in_range = false;
      }
      std::fill(sigma_o.begin(), sigma_o.end(), 0u);
      while (true) {
        if (in_range && rows_satisfied(y, sigma_o)) found(y);
        if (!advance(sigma_o)) break;
      }
      if (!advance(sigma_s)) break;
    }
  }

 private:
  static Int from(const BigInt& x) {
    Int out;
    convert(x, out);
    return out;
  }
  static void convert(const BigInt& x, BigInt& out) { out = x; }
  static void convert(const BigInt& x, std::int64_t& out) { out = x.get_si(); }

  bool rows_satisfied(const std::vector<Int>& y, const std::vector<unsigned>& sigma_o) const {
    for (std::size_t i = 0; i < others_.size(); ++i) {
      const std::size_t e = others_[i];
      Int lhs = 0;
      for (auto c : design_.row_support(e)) {
        if (position_[c] >= 0) lhs += y[static_cast<std::size_t>(position_[c])];
      }
      if (lhs != delta_ * (targets_[e] + lcm_ * Int(sigma_o[i]))) return false;
    }
    return true;
  }

  bool advance(std::vector<unsigned>& digits) const {
    for (auto& d : digits) {
      if (++d < order_) return true;
      d = 0;
    }
    return false;
  }

  const DesignMatrix& design_;
  const linalg::RowBasis& basis_;
  std::size_t order_;
  Int delta_;
  Int lcm_;
  std::vector<std::vector<Int>> inverse_;
  std::vector<Int> targets_;
  std::vector<int> position_;
  std::vector<std::size_t> others_;
};

}  // namespace

SolutionSet brute_force_sigma(const PartialTensor& tensor, std::size_t cap) {
  const std::size_t m = tensor.m();
  if (m > cap) {
    throw Error(ErrorCode::CapExceeded,
                "m = " + std::to_string(m) + " exceeds oracle cap " + std::to_string(cap));
  }
  auto analysis = analyze_structure(tensor.pattern());
  const auto& design = analysis.design;
  const auto& basis = analysis.basis;
  const std::size_t r = basis.rank();
  const std::size_t n = design.cols();

  SolutionSet out;
  auto magnitudes = solve_magnitudes(tensor, analysis, MagnitudeOptions{false});
  if (!magnitudes.consistent) return out;

  // Exact inverse of the pivot block, one unit right-hand side at a time.
  linalg::RationalMatrix block(r, r);
  std::vector<std::optional<std::size_t>> position(n);
  for (std::size_t k = 0; k < r; ++k) position[basis.pivot_columns[k]] = k;
  for (std::size_t l = 0; l < r; ++l) {
    for (auto c : design.row_support(basis.rows[l])) {
      if (position[c]) block(l, *position[c]) = 1;
    }
  }
  std::vector<std::vector<Rational>> inverse(r, std::vector<Rational>(r));
  for (std::size_t l = 0; l < r; ++l) {
    std::vector<Rational> unit(r, Rational(0));
    unit[l] = 1;
    auto sol = linalg::rational_solve(block, unit);
    for (std::size_t k = 0; k < r; ++k) inverse[k][l] = sol.particular[k];
  }
  BigInt delta = 1;
  for (const auto& row : inverse) {
    for (const auto& x : row) mpz_lcm(delta.get_mpz_t(), delta.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<std::vector<BigInt>> inverse_num(r, std::vector<BigInt>(r));
  BigInt max_entry = 0;
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t l = 0; l < r; ++l) {
      Rational scaled = inverse[k][l] * Rational(delta);
      inverse_num[k][l] = scaled.get_num();
      max_entry = std::max(max_entry, BigInt(abs(inverse_num[k][l])));
    }
  }
  BigInt lcm = 1;
  std::vector<Rational> targets(m);
  for (std::size_t e = 0; e < m; ++e) {
    targets[e] = tensor.phase_turns(e);
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), targets[e].get_den_mpz_t());
  }
  std::vector<BigInt> scaled_targets(m);
  for (std::size_t e = 0; e < m; ++e) {
    scaled_targets[e] = Rational(targets[e] * Rational(lcm)).get_num();
  }

  const std::size_t order = tensor.pattern().order();
  std::set<PhaseVector> found;
  const BigInt scale = delta * lcm;
  auto record = [&](const auto& y) {
    PhaseVector phi(n, Rational(0));
    for (std::size_t k = 0; k < r; ++k) {
      phi[basis.pivot_columns[k]] = Rational(BigInt(y[k]), scale);
      phi[basis.pivot_columns[k]].canonicalize();
    }
    found.insert(std::move(phi));
  };

  // |y| <= r * max|M| * L * d and the row sums stay within n times that.
  const BigInt bound = BigInt(static_cast<unsigned long>(std::max(r, n) + 1)) * max_entry * lcm *
                       BigInt(static_cast<unsigned long>(order + 1)) * delta;
  if (bound < BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    SigmaEnumerator<std::int64_t> en(design, basis, inverse_num, delta, scaled_targets, lcm, order);
    en.run([&](const std::vector<std::int64_t>& y) {
      std::vector<BigInt> big;
      for (auto v : y) big.emplace_back(static_cast<long>(v));
      record(big);
    });
  } else {
    SigmaEnumerator<BigInt> en(design, basis, inverse_num, delta, scaled_targets, lcm, order);
    en.run([&](const std::vector<BigInt>& y) { record(y); });
  }

  if (found.empty()) return out;
  if (!analysis.report.condition_a) {
    out.infinite = true;
    out.solutions.push_back(assemble_factors(design, tensor.dims(), magnitudes, *found.begin()));
    return out;
  }
  for (const auto& phi : found) {
    out.solutions.push_back(assemble_factors(design, tensor.dims(), magnitudes, phi));
  }
  std::sort(out.solutions.begin(), out.solutions.end(), canonical_less);
  return out;
}

std::optional<PhaseVector> non_uniqueness_witness(const PartialTensor& tensor) {
  auto result = count_complex(tensor, ComplexSolveOptions{MagnitudeOptions{false}});
  if (!result.pattern.condition_a) {
    throw Error(ErrorCode::ConditionAViolated, "witness requires condition (A)");
  }
  if (result.status != ComplexStatus::Solutions) {
    throw Error(ErrorCode::Precondition, "tensor has no rank-one completion over C");
  }
  if (result.phases.generators.empty()) return std::nullopt;
  if (!result.materialized) return result.phases.generators.front();
  for (const auto& k : result.kernel_elements) {
    if (std::any_of(k.begin(), k.end(), [](const Rational& x) { return x != 0; })) return k;
  }
  return std::nullopt;
}

}  // namespace rankone

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

// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rankone/cli.hpp"
#include "rankone/rankone.hpp"
#include "support.hpp"

namespace {

using namespace rankone;
using testing::Rng;
using testing::load_fixture;
using Turns = std::vector<std::vector<Rational>>;

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

Turns turns_of(const RankOneFactors& f) {
  Turns out;
  for (const auto& v : f.vectors()) {
    std::vector<Rational> t;
    for (const auto& c : v) t.push_back(c.phase_turns);
    out.push_back(std::move(t));
  }
  return out;
}

Turns turns(std::initializer_list<std::initializer_list<const char*>> rows) {
  Turns out;
  for (const auto& r : rows) {
    std::vector<Rational> v;
    for (const char* s : r) v.push_back(parse_rational(s));
    out.push_back(std::move(v));
  }
  return out;
}

bool unit_magnitudes(const RankOneFactors& f) {
  for (const auto& v : f.vectors())
    for (const auto& c : v)
      if (std::abs(c.magnitude - 1.0) > 1e-12) return false;
  return true;
}

void check_emitted(const PartialTensor& t, const std::vector<RankOneFactors>& solutions) {
  for (const auto& s : solutions) {
    auto c = check_solution(t, s);
    require(c.phases_exact && c.max_relative_magnitude_error <= 1e-9, "emitted solution violates observations");
  }
}

SolutionCount count_of(const SolutionSet& s) {
  return s.infinite ? SolutionCount::unbounded() : SolutionCount::finite(s.solutions.size());
}

std::string analyze_cli(const std::string& path, std::string& out) {
  std::ostringstream o, e;
  const int code = cli::run({"analyze", path, "--json"}, o, e);
  out = o.str();
  return code == 0 ? std::string() : e.str();
}

// Criterion bodies.

void criterion1() {
  auto t = load_fixture("table1.slices");
  std::string out;
  auto err = analyze_cli(testing::fixture_path("table1.slices"), out);
  require(err.empty(), err);
  require(out.find("\"condition_a\": true") != std::string::npos, "condition (A) not reported true");
  auto real = solve_real(t);
  auto cplx = count_complex(t);
  require(analyze_pattern(t.pattern()).condition_a, "condition (A) false");
  require(real.count == SolutionCount::finite(1), "real count " + to_string(real.count));
  require(cplx.count == SolutionCount::finite(1), "complex count " + to_string(cplx.count));
  require(cplx.solutions.solutions.size() == 1, "complex listing size");
  const auto& s = cplx.solutions.solutions[0];
  require(unit_magnitudes(s) && turns_of(s) == turns({{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}),
          "solution is not all ones");
  require(check_solution_exact(t, s), "solution fails exact check");
}

void criterion2() {
  auto t = load_fixture("table2.slices");
  auto r = solve_real(t);
  require(r.count == SolutionCount::finite(2), "real count " + to_string(r.count));
  require(r.solutions.solutions.size() == 2, "listing size");
  const Turns sol1 = turns({{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}});
  const Turns sol2 = turns({{"0", "0", "1/2"}, {"0", "0", "1/2"}, {"0", "0", "1/2"}});
  require(turns_of(r.solutions.solutions[0]) == sol1, "solution 1 differs");
  require(turns_of(r.solutions.solutions[1]) == sol2, "solution 2 differs");
  for (const auto& s : r.solutions.solutions) {
    require(unit_magnitudes(s), "magnitudes differ from 1");
    for (const auto& v : turns_of(s))
      for (const auto& x : v) require(x == 0 || x == Rational(1, 2), "phase outside {0, 1/2}");
  }
  check_emitted(t, r.solutions.solutions);
}

void criterion3() {
  auto t = load_fixture("table3.slices");
  auto real = solve_real(t);
  auto cplx = count_complex(t);
  require(real.count == SolutionCount::finite(1), "real count " + to_string(real.count));
  require(cplx.count == SolutionCount::finite(3), "complex count " + to_string(cplx.count));
  std::set<Turns> got;
  for (const auto& s : cplx.solutions.solutions) {
    require(unit_magnitudes(s), "magnitudes differ from 1");
    got.insert(turns_of(s));
  }
  const std::set<Turns> listed{turns({{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}),
                              turns({{"0", "0", "1/3"}, {"0", "2/3", "1/3"}, {"0", "2/3", "1/3"}}),
                              turns({{"0", "0", "2/3"}, {"0", "1/3", "2/3"}, {"0", "1/3", "2/3"}})};
  require(got == listed, "complex solutions differ from the listed ones");
  check_emitted(t, cplx.solutions.solutions);
}

void criterion4() {
  for (const char* name : {"table4.slices", "table4.json"}) {
    auto t = load_fixture(name);
    auto real = solve_real(t);
    require(real.count.is_zero(), std::string(name) + ": real count " + to_string(real.count));
    auto cplx = count_complex(t);
    require(!cplx.count.is_zero(), "no complex solutions");
    std::set<Turns> got;
    for (const auto& s : cplx.solutions.solutions) {
      require(unit_magnitudes(s), "magnitudes differ from 1");
      got.insert(turns_of(s));
    }
    require(got.count(turns({{"0", "1/2", "1/4"}, {"0", "1/4", "1/2"}, {"1/2", "3/4", "1/4"}})) == 1,
            "listed solution 1 missing");
    require(got.count(turns({{"0", "1/2", "3/4"}, {"0", "3/4", "1/2"}, {"1/2", "1/4", "3/4"}})) == 1,
            "listed solution 2 missing");
    check_emitted(t, cplx.solutions.solutions);
  }
}

void criterion5() {
  Rng rng(5005);
  std::size_t consistent = 0, real_nonzero = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto dims = testing::random_dims(rng, 3, 4);
    auto p = testing::random_pattern(rng, dims, testing::uniform(rng, 1, 10));
    const std::vector<long> dens{1, 2, 3, 4, 6};
    auto t = trial % 2 ? testing::random_phase_tensor(rng, p, dens)
                       : testing::planted_tensor(rng, p, dens, true).tensor;
    auto oracle = brute_force_sigma(t);
    auto fast = count_complex(t);
    require(fast.count == count_of(oracle), "trial " + std::to_string(trial) + ": count_complex " +
                                                to_string(fast.count) + " vs oracle " +
                                                to_string(count_of(oracle)));
    if (!oracle.infinite && fast.materialized)
      require(testing::phase_set(fast.solutions.solutions) == testing::phase_set(oracle.solutions),
              "trial " + std::to_string(trial) + ": solution sets differ");
    consistent += !fast.count.is_zero();
    check_emitted(t, fast.solutions.solutions);

    auto real_t = trial % 2 ? testing::random_phase_tensor(rng, p, {1, 2})
                            : testing::planted_tensor(rng, p, {1, 2}, true).tensor;
    auto real = solve_real(real_t);
    auto signs = brute_force_signs(real_t);
    require(real.count == signs, "trial " + std::to_string(trial) + ": solve_real " + to_string(real.count) +
                                     " vs sign search " + to_string(signs));
    real_nonzero += !real.count.is_zero();
    check_emitted(real_t, real.solutions.solutions);
  }
  require(consistent >= 100 && real_nonzero >= 100, "too few consistent instances");
}

void criterion6() {
  // Table 6 rows i, slices k, columns j, then the factors.
  const double grid[3][3][3] = {
      {{1.0052, 1.0135, 1.0501}, {0.8976, 0.9050, 0.9377}, {0.9925, 1.0007, 1.0368}},
      {{0.9448, 0.9526, 0.9869}, {0.8436, 0.8506, 0.8813}, {0.9328, 0.9405, 0.9745}},
      {{0.9934, 1.0016, 1.0378}, {0.8871, 0.8944, 0.9267}, {0.9809, 0.9889, 1.0247}},
  };
  const double factors[3][3] = {{1, 0.9399, 0.9883}, {1, 1.0082, 1.0446}, {1.0052, 0.8976, 0.9925}};
  auto fit = fit_least_squares(load_fixture("table5.slices"));
  double worst = 0;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 1; i <= 3; ++i)
      worst = std::max(worst, std::abs(fit.factors.entry(k, i).magnitude - factors[k][i - 1]));
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j)
      for (std::size_t k = 1; k <= 3; ++k)
        worst = std::max(worst, std::abs(evaluate(fit.factors, {i, j, k}).magnitude - grid[i - 1][k - 1][j - 1]));
  require(worst <= 2e-3, "max deviation " + std::to_string(worst));
}

void criterion7() {
  namespace fs = std::filesystem;
  auto path = (fs::temp_directory_path() / "rankone_acceptance_50cubed.json").string();
  std::ostringstream o, e;
  int code = cli::run({"generate", "--dims", "50,50,50", "--ones", "--count", "10000", "--seed", "7", "--amp", "0",
                       "-o", path},
                      o, e);
  require(code == 0, "generate failed: " + e.str());
  std::ostringstream o2, e2;
  const auto start = std::chrono::steady_clock::now();
  code = cli::run({"analyze", path, "--field", "real"}, o2, e2);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fs::remove(path);
  require(code == 0, "analyze failed: " + e2.str());
  require(o2.str().find("real count:") != std::string::npos, "no real count printed");
  require(secs < 10.0, "analyze took " + std::to_string(secs) + " s");
  std::printf("  (analyze --field real on 50x50x50, m = 10000: %.3f s)\n", secs);
}

void criterion8() {
  Rng rng(8008);
  int done = 0;
  for (int attempt = 0; done < 200 && attempt < 5000; ++attempt) {
    auto dims = testing::random_dims(rng, 2, 6);
    std::size_t n = dims[0] + dims[1] - 1;
    auto p = testing::random_pattern(rng, dims, testing::uniform(rng, n, dims[0] * dims[1]));
    if (!analyze_pattern(p).condition_a) continue;
    auto t = testing::planted_tensor(rng, p, {1, 2}, false).tensor;
    auto real = solve_real(t);
    auto cplx = count_complex(t);
    require(real.count == SolutionCount::finite(1), "real count " + to_string(real.count));
    require(cplx.count == SolutionCount::finite(1), "complex count " + to_string(cplx.count));
    check_emitted(t, real.solutions.solutions);
    check_emitted(t, cplx.solutions.solutions);
    ++done;
  }
  require(done == 200, "only " + std::to_string(done) + " instances generated");
}

std::vector<double> gradient(const PartialTensor& t, const std::vector<double>& x) {
  DesignMatrix d(t.pattern());
  std::vector<double> g(d.cols(), 0.0);
  for (std::size_t e = 0; e < t.m(); ++e) {
    double r = -t.log_magnitude(e);
    for (auto c : d.row_support(e)) r += x[c];
    for (auto c : d.row_support(e)) g[c] += 2 * r;
  }
  return g;
}

void criterion9() {
  Rng rng(9009);
  std::size_t solutions = 0, snf = 0, fits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto dims = testing::random_dims(rng, 2 + trial % 3, 4);
    auto p = testing::random_pattern(rng, dims, testing::uniform(rng, 1, 14));
    auto planted = testing::planted_tensor(rng, p, {1, 2, 3, 4, 5, 8}, false).tensor;
    auto cplx = count_complex(planted);
    require(!cplx.count.is_zero(), "planted instance reported inconsistent");
    check_emitted(planted, cplx.solutions.solutions);
    if (cplx.base) check_emitted(planted, {*cplx.base});
    solutions += cplx.solutions.solutions.size();
    auto real_t = testing::planted_tensor(rng, p, {1, 2}, false).tensor;
    auto real = solve_real(real_t);
    check_emitted(real_t, real.solutions.solutions);
    solutions += real.solutions.solutions.size();

    auto a = DesignMatrix(p).integer_matrix();
    auto decomposition = linalg::integer_smith(a);
    require(linalg::verify_smith(a, decomposition), "U A V != D");
    auto ua = linalg::multiply(linalg::multiply(decomposition.u, a), decomposition.v);
    for (std::size_t r = 0; r < ua.rows(); ++r)
      for (std::size_t c = 0; c < ua.cols(); ++c)
        require(ua(r, c) == (r == c ? decomposition.divisors[r] : BigInt(0)), "U A V differs from D");
    ++snf;

    if (!analyze_pattern(p).condition_a) continue;
    auto noisy = generate_noisy(RankOneFactors::ones(dims), p, NoiseSpec{0.3, static_cast<std::uint64_t>(trial)});
    auto fit = fit_least_squares(noisy);
    require(fit.gradient_norm <= 1e-10 * (1 + fit.q_norm), "gradient norm " + std::to_string(fit.gradient_norm));
    auto x = fit.log_values;
    for (auto& v : x) v += 0.1 * (static_cast<double>(rng() % 1000) / 1000.0 - 0.5);
    auto g = gradient(noisy, x);
    const double h = 1e-6;
    for (std::size_t c = 0; c < x.size(); ++c) {
      auto xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      const double fd = (fit_objective(noisy, xp) - fit_objective(noisy, xm)) / (2 * h);
      require(std::abs(fd - g[c]) <= 1e-4 * std::max(1.0, std::abs(g[c])), "finite difference mismatch");
    }
    ++fits;
  }
  require(solutions > 300 && fits > 50, "too few checks exercised");
  std::printf("  (%zu solutions checked, %zu Smith forms, %zu fits)\n", solutions, snf, fits);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"Table 1: unique over R and C, all-ones factors", criterion1},
      {"Table 2: two real solutions equal to the listed ones", criterion2},
      {"Table 3: real count 1, complex count 3 with turns 1/3, 2/3", criterion3},
      {"Table 4: no real solution, both listed complex solutions found", criterion4},
      {"oracle equivalence on 200 random 3-way patterns", criterion5},
      {"Table 5 fit reproduces Table 6 within 2e-3", criterion6},
      {"real decision on 50x50x50 with m = 10000 under 10 s", criterion7},
      {"matrix case: local uniqueness gives global uniqueness (200 instances)", criterion8},
      {"property suites: solutions, Smith forms, fit gradients", criterion9},
  };
  const double limits[] = {1.0, 60.0, 60.0, 60.0, 60.0, 60.0, 60.0, 60.0, 60.0};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = true;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs >= limits[i]) {
      ok = false;
      detail = "took " + std::to_string(secs) + " s";
    }
    std::printf("%s criterion %zu: %s [%.2f s]%s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}

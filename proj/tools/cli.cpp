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

#include "rankone/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "builtin_patterns.hpp"
#include "rankone/rankone.hpp"

namespace rankone::cli {
namespace {

using nlohmann::json;

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Rounds to 12 significant digits so the JSON dump is stable across runs.
double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt12(x).c_str(), nullptr);
}

std::string mode_name(std::size_t mode) {
  if (mode < 26) return std::string(1, static_cast<char>('a' + mode));
  return "f" + std::to_string(mode + 1);
}

json big_json(const BigInt& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

json count_json(const SolutionCount& c) {
  if (c.infinite) return json("infinite");
  return big_json(c.value);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CapExceeded: return kExitCap;
    case ErrorCode::ConditionAViolated:
    case ErrorCode::NonPositiveValue: return kExitFitPrecondition;
    default: return kExitParse;
  }
}

// Thrown by subcommands to stop with a specific exit code.
struct Exit {
  int code;
  std::string message;
};

PartialTensor load(const std::string& path) {
  try {
    return read_tensor(path);
  } catch (const Error& e) {
    throw Exit{kExitParse, path + ": " + e.what()};
  }
}

json pattern_json(const PatternReport& r, const std::vector<std::size_t>& dims) {
  return json{{"m", r.m},
              {"dims", dims},
              {"unknowns", r.unknowns},
              {"rank", r.rank},
              {"condition_a", r.condition_a},
              {"dof", r.dof},
              {"overdetermined", r.overdetermined}};
}

json provenance_json(const std::string& input, const PartialTensor& t) {
  return json{{"input", input}, {"mode", std::string(to_string(t.mode()))}, {"version", kVersion}};
}

json empty_report() {
  return json{{"pattern", nullptr}, {"real", nullptr}, {"complex", nullptr}, {"fit", nullptr},
              {"provenance", nullptr}};
}

// ---- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  std::string field = "both";
  bool as_json = false;
};

std::string real_reason(RealStatus s) {
  return s == RealStatus::NoSolutionMagnitude ? "magnitude system inconsistent"
                                              : "sign system inconsistent";
}

std::string complex_reason(ComplexStatus s) {
  return s == ComplexStatus::NoSolutionMagnitude ? "magnitude system inconsistent"
                                                 : "phase system inconsistent";
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const PartialTensor t = load(a.input);
  const bool want_real = a.field != "complex";
  const bool want_complex = a.field != "real";

  json report = empty_report();
  report["provenance"] = provenance_json(a.input, t);
  const PatternReport pattern = analyze_pattern(t.pattern());
  report["pattern"] = pattern_json(pattern, t.dims());

  std::ostringstream text;
  text << "input: " << a.input << " (" << to_string(t.mode()) << ", m = " << t.m() << ")\n";
  text << "condition (A): " << (pattern.condition_a ? "true" : "false") << "\n";
  text << "unknowns: " << pattern.unknowns << ", rank: " << pattern.rank << ", dof: " << pattern.dof
       << "\n";

  if (want_real) {
    if (!t.all_real()) {
      report["real"] = json{{"status", "non_real_input"}, {"count", 0}};
      text << "real count: 0 (observations are not real)\n";
    } else {
      RealSolveOptions opts;
      opts.magnitudes.exponents = false;
      opts.enumeration_cap_bits = 0;
      const auto r = solve_real(t, opts);
      report["real"] = json{{"status", std::string(to_string(r.status))},
                            {"count", count_json(r.count)},
                            {"sign_kernel_dim", r.sign_kernel_dim}};
      text << "real count: " << to_string(r.count);
      if (r.status != RealStatus::Solutions) text << " (" << real_reason(r.status) << ")";
      text << "\n";
    }
  }
  if (want_complex) {
    ComplexSolveOptions opts;
    opts.magnitudes.exponents = false;
    opts.materialization_cap = 0;
    const auto c = count_complex(t, opts);
    json divisors = json::array();
    for (const auto& d : c.divisors) divisors.push_back(big_json(d));
    report["complex"] = json{{"status", std::string(to_string(c.status))},
                             {"count", count_json(c.count)},
                             {"divisors", divisors}};
    text << "complex count: " << to_string(c.count);
    if (c.status != ComplexStatus::Solutions) text << " (" << complex_reason(c.status) << ")";
    text << "\n";
    text << "elementary divisors:";
    for (const auto& d : c.divisors) text << " " << d.get_str();
    text << "\n";
  }

  if (a.as_json) {
    out << report.dump(2) << "\n";
  } else {
    out << text.str();
  }
  return kExitOk;
}

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string input;
  std::string field = "complex";
  bool exact = false;
  long limit = -1;
};

std::string exponent_form(const ExponentVector& ev, const ObservationPattern& pattern) {
  if (ev.empty()) return "1";
  std::string s;
  for (const auto& [e, r] : ev) {
    if (!s.empty()) s += "·";
    s += "|Q" + to_string(pattern.index(e)) + "|";
    if (r != 1) s += "^(" + to_string(r) + ")";
  }
  return s;
}

void print_factors(const RankOneFactors& f, bool real_field, bool exact,
                   const ObservationPattern& pattern, std::ostream& out) {
  for (std::size_t k = 0; k < f.order(); ++k) {
    const auto& vec = f.vectors()[k];
    std::vector<std::string> cells, turns, expo;
    bool any_phase = false;
    for (const auto& c : vec) {
      if (real_field) {
        cells.push_back(fmt12(c.phase_turns == 0 ? c.magnitude : -c.magnitude));
      } else if (c.phase_turns == 0) {
        cells.push_back(fmt12(c.magnitude));
      } else {
        cells.push_back(fmt12(c.magnitude) + "·e^{2πi·" + to_string(c.phase_turns) + "}");
      }
      if (c.phase_turns != 0) any_phase = true;
      turns.push_back(to_string(c.phase_turns));
      if (exact) expo.push_back(c.exponents ? exponent_form(*c.exponents, pattern) : "?");
    }
    auto join = [](const std::vector<std::string>& v) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
      return s + ")";
    };
    out << "  " << mode_name(k) << " = " << join(cells) << "\n";
    if (!real_field && any_phase) out << "  " << mode_name(k) << " turns = " << join(turns) << "\n";
    if (exact) out << "  |" << mode_name(k) << "| = " << join(expo) << "\n";
  }
}

void print_solutions(const SolutionSet& set, const SolutionCount& count, bool materialized,
                     const PatternReport& pattern, const SolveArgs& a, const PartialTensor& t,
                     std::ostream& out) {
  const bool real_field = a.field == "real";
  if (set.infinite) {
    out << "solutions: infinite (dof = " << pattern.dof << "); one representative:\n";
  } else {
    out << "solutions: " << to_string(count) << "\n";
    if (!materialized) out << "too many to list; showing the base solution\n";
  }
  std::size_t shown = 0;
  for (const auto& f : set.solutions) {
    if (a.limit >= 0 && shown >= static_cast<std::size_t>(a.limit)) {
      out << "(" << set.solutions.size() - shown << " more not shown)\n";
      break;
    }
    ++shown;
    out << "solution " << shown << ":\n";
    print_factors(f, real_field, a.exact, t.pattern(), out);
  }
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const PartialTensor t = load(a.input);
  MagnitudeOptions mags;
  mags.exponents = a.exact;
  out << "field: " << a.field << "\n";
  if (a.field == "real") {
    if (!t.all_real()) throw Exit{kExitNoSolution, "no real rank-one completion: observations are not real"};
    RealSolveOptions opts;
    opts.magnitudes = mags;
    const auto r = solve_real(t, opts);
    if (r.status != RealStatus::Solutions) {
      throw Exit{kExitNoSolution, "no real rank-one completion: " + real_reason(r.status)};
    }
    print_solutions(r.solutions, r.count, r.materialized, r.pattern, a, t, out);
  } else {
    ComplexSolveOptions opts;
    opts.magnitudes = mags;
    const auto c = count_complex(t, opts);
    if (c.status != ComplexStatus::Solutions) {
      throw Exit{kExitNoSolution, "no complex rank-one completion: " + complex_reason(c.status)};
    }
    print_solutions(c.solutions, c.count, c.materialized, c.pattern, a, t, out);
  }
  return kExitOk;
}

// ---- fit --------------------------------------------------------------------

struct FitArgs {
  std::string input;
  bool full = false;
  bool as_json = false;
};

std::vector<MultiIndex> full_grid(const std::vector<std::size_t>& dims) {
  std::vector<MultiIndex> grid;
  MultiIndex idx(dims.size(), 1);
  while (true) {
    grid.push_back(idx);
    std::size_t k = dims.size();
    while (k > 0) {
      --k;
      if (++idx[k] <= dims[k]) break;
      idx[k] = 1;
      if (k == 0) return grid;
    }
  }
}

double fitted_value(const RankOneFactors& f, const MultiIndex& idx) {
  return evaluate(f, idx).magnitude;
}

int cmd_fit(const FitArgs& a, std::ostream& out) {
  const PartialTensor t = load(a.input);
  FitResult fit = [&] {
    try {
      return fit_least_squares(t);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConditionAViolated || e.code() == ErrorCode::NonPositiveValue) {
        throw Exit{kExitFitPrecondition, std::string("fit precondition failed: ") + e.what()};
      }
      throw;
    }
  }();
  const auto& f = fit.factors;

  if (a.as_json) {
    json report = empty_report();
    report["provenance"] = provenance_json(a.input, t);
    report["pattern"] = pattern_json(analyze_pattern(t.pattern()), t.dims());
    json factors = json::object();
    for (std::size_t k = 0; k < f.order(); ++k) {
      json v = json::array();
      for (const auto& c : f.vectors()[k]) v.push_back(round12(c.magnitude));
      factors[mode_name(k)] = v;
    }
    json residuals = json::array();
    for (std::size_t e = 0; e < t.m(); ++e) {
      const auto& idx = t.pattern().index(e);
      residuals.push_back(json{{"index", idx},
                               {"observed", round12(t.magnitude(e))},
                               {"fitted", round12(fitted_value(f, idx))},
                               {"log_residual", round12(fit.residuals[e])}});
    }
    json section{{"objective", round12(fit.objective)},
                 {"gradient_norm", round12(fit.gradient_norm)},
                 {"factors", factors},
                 {"residuals", residuals}};
    if (a.full) {
      json grid = json::array();
      for (const auto& idx : full_grid(t.dims())) {
        grid.push_back(json{{"index", idx}, {"value", round12(fitted_value(f, idx))}});
      }
      section["full"] = grid;
    }
    report["fit"] = section;
    out << report.dump(2) << "\n";
    return kExitOk;
  }

  out << "factors:\n";
  for (std::size_t k = 0; k < f.order(); ++k) {
    out << "  " << mode_name(k) << " = (";
    const auto& v = f.vectors()[k];
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << fmt12(v[i].magnitude);
    out << ")\n";
  }
  out << "objective: " << fmt12(fit.objective) << "\n";
  out << "gradient norm: " << fmt12(fit.gradient_norm) << "\n";
  out << "residuals (index, observed, fitted, log residual):\n";
  for (std::size_t e = 0; e < t.m(); ++e) {
    const auto& idx = t.pattern().index(e);
    out << "  " << to_string(idx) << "  " << fmt12(t.magnitude(e)) << "  "
        << fmt12(fitted_value(f, idx)) << "  " << fmt12(fit.residuals[e]) << "\n";
  }
  if (a.full) {
    out << "full tensor:\n";
    const auto& dims = t.dims();
    if (dims.size() == 3) {
      char buf[64];
      for (std::size_t i = 1; i <= dims[0]; ++i) {
        std::string line;
        for (std::size_t k = 1; k <= dims[2]; ++k) {
          if (k > 1) line += " |";
          for (std::size_t j = 1; j <= dims[1]; ++j) {
            std::snprintf(buf, sizeof buf, " %.4f", fitted_value(f, {i, j, k}));
            line += buf;
          }
        }
        out << " " << line << "\n";
      }
    } else {
      for (const auto& idx : full_grid(dims)) {
        out << "  " << to_string(idx) << "  " << fmt12(fitted_value(f, idx)) << "\n";
      }
    }
  }
  return kExitOk;
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string dims;
  bool ones = false;
  std::string factors;
  std::string pattern;
  double density = -1.0;
  long count = -1;
  double amp = 0.0;
  std::uint64_t seed = 0;
  std::string output;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> dims;
  for (const auto& p : split(s, ',')) {
    try {
      std::size_t pos = 0;
      long v = std::stol(p, &pos);
      if (pos != p.size() || v <= 0) throw std::invalid_argument(p);
      dims.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidSpec, "bad --dims entry '" + p + "'");
    }
  }
  if (dims.size() < 2) throw Error(ErrorCode::InvalidSpec, "--dims needs at least two modes");
  return dims;
}

PolarScalar parse_factor_cell(const std::string& cell) {
  auto at = cell.find('@');
  if (at == std::string::npos) return PolarScalar::make(parse_rational(cell));
  return PolarScalar::make(parse_rational(cell.substr(0, at)), parse_rational(cell.substr(at + 1)));
}

std::vector<std::vector<PolarScalar>> parse_factor_spec(const std::string& spec,
                                                        const std::vector<std::size_t>& dims) {
  auto vectors = split(spec, ';');
  if (vectors.size() != dims.size()) {
    throw Error(ErrorCode::InvalidSpec, "--factors needs one ';'-separated vector per mode");
  }
  std::vector<std::vector<PolarScalar>> out;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::vector<PolarScalar> v;
    for (const auto& c : split(vectors[k], ',')) {
      PolarScalar x = parse_factor_cell(c);
      if (x.magnitude == 0) throw Error(ErrorCode::InvalidSpec, "factor components must be nonzero");
      v.push_back(std::move(x));
    }
    if (v.size() != dims[k]) {
      throw Error(ErrorCode::InvalidSpec, "factor " + mode_name(k) + " has " + std::to_string(v.size()) +
                                              " components, dims say " + std::to_string(dims[k]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::uint64_t product(const std::vector<std::size_t>& dims) {
  std::uint64_t n = 1;
  for (auto d : dims) {
    if (n > std::numeric_limits<std::uint64_t>::max() / d) {
      throw Error(ErrorCode::InvalidSpec, "tensor too large for a random pattern");
    }
    n *= d;
  }
  return n;
}

MultiIndex unravel(std::uint64_t linear, const std::vector<std::size_t>& dims) {
  MultiIndex idx(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    idx[k] = static_cast<std::size_t>(linear % dims[k]) + 1;
    linear /= dims[k];
  }
  return idx;
}

ObservationPattern build_pattern(const GenerateArgs& a, const std::vector<std::size_t>& dims) {
  const int chosen = (!a.pattern.empty()) + (a.density >= 0) + (a.count >= 0);
  if (chosen > 1) throw Error(ErrorCode::InvalidSpec, "use only one of --pattern, --density, --count");
  // Pattern randomness is decoupled from the noise stream.
  std::mt19937_64 rng(a.seed ^ 0x9e3779b97f4a7c15ULL);
  if (a.density >= 0) {
    if (a.density > 1) throw Error(ErrorCode::InvalidSpec, "--density must lie in [0, 1]");
    std::vector<MultiIndex> indices;
    const std::uint64_t total = product(dims);
    for (std::uint64_t l = 0; l < total; ++l) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < a.density) indices.push_back(unravel(l, dims));
    }
    return ObservationPattern(dims, std::move(indices));
  }
  if (a.count >= 0) {
    const std::uint64_t total = product(dims);
    const auto m = static_cast<std::uint64_t>(a.count);
    if (m > total) throw Error(ErrorCode::InvalidSpec, "--count exceeds the number of cells");
    // Floyd's sampling of m distinct cells.
    std::set<std::uint64_t> picked;
    for (std::uint64_t j = total - m; j < total; ++j) {
      const std::uint64_t r = rng() % (j + 1);
      if (!picked.insert(r).second) picked.insert(j);
    }
    std::vector<MultiIndex> indices;
    for (auto l : picked) indices.push_back(unravel(l, dims));
    return ObservationPattern(dims, std::move(indices));
  }
  if (a.pattern.empty() || a.pattern == "full") {
    std::vector<MultiIndex> indices = full_grid(dims);
    return ObservationPattern(dims, std::move(indices));
  }
  if (auto builtin = builtin_pattern(a.pattern)) {
    if (builtin->dims() != dims) throw Error(ErrorCode::InvalidSpec, a.pattern + " needs --dims 3,3,3");
    return *builtin;
  }
  std::vector<MultiIndex> indices;
  for (const auto& cell : split(a.pattern, ';')) {
    MultiIndex idx;
    for (const auto& c : split(cell, ',')) {
      try {
        std::size_t pos = 0;
        long v = std::stol(c, &pos);
        if (pos != c.size() || v <= 0) throw std::invalid_argument(c);
        idx.push_back(static_cast<std::size_t>(v));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidSpec, "bad --pattern index '" + cell + "'");
      }
    }
    if (idx.size() != dims.size()) {
      throw Error(ErrorCode::InvalidSpec, "pattern index '" + cell + "' has the wrong order");
    }
    indices.push_back(std::move(idx));
  }
  return ObservationPattern(dims, std::move(indices));
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const auto dims = parse_dims(a.dims);
  if (a.ones == !a.factors.empty()) throw Error(ErrorCode::InvalidSpec, "give exactly one of --ones, --factors");
  std::vector<std::vector<PolarScalar>> truth;
  if (a.ones) {
    for (auto n : dims) truth.emplace_back(n, PolarScalar::make(Rational(1)));
  } else {
    truth = parse_factor_spec(a.factors, dims);
  }
  const ObservationPattern pattern = build_pattern(a, dims);

  PartialTensor tensor = [&] {
    if (a.amp == 0.0) {
      std::vector<std::pair<MultiIndex, PolarScalar>> entries;
      for (const auto& idx : pattern.indices()) {
        Rational mag(1), phase(0);
        for (std::size_t k = 0; k < dims.size(); ++k) {
          mag *= truth[k][idx[k] - 1].magnitude;
          phase += truth[k][idx[k] - 1].phase_turns;
        }
        entries.emplace_back(idx, PolarScalar::make(mag, phase));
      }
      return PartialTensor::exact(dims, std::move(entries));
    }
    std::vector<std::vector<double>> mags;
    for (const auto& v : truth) {
      std::vector<double> m;
      for (const auto& c : v) {
        if (c.phase_turns != 0) throw Error(ErrorCode::InvalidSpec, "noisy generation needs positive factors");
        m.push_back(to_double(c.magnitude));
      }
      mags.push_back(std::move(m));
    }
    NoiseSpec noise;
    noise.amplitude = a.amp;
    noise.seed = a.seed;
    return generate_noisy(RankOneFactors::from_magnitudes(mags), pattern, noise);
  }();

  const std::string doc = serialize_json(tensor);
  std::ostream* factors_out = &out;
  std::ostringstream sink;
  if (a.output.empty()) {
    out << doc;
    factors_out = &sink;
  } else {
    std::ofstream file(a.output, std::ios::binary);
    if (!file) throw Exit{kExitParse, "cannot write " + a.output};
    file << doc;
    out << "wrote " << a.output << " (m = " << tensor.m() << ", " << to_string(tensor.mode()) << ")\n";
  }
  *factors_out << "true factors:\n";
  for (std::size_t k = 0; k < truth.size(); ++k) {
    *factors_out << "  " << mode_name(k) << " = (";
    for (std::size_t i = 0; i < truth[k].size(); ++i) {
      const auto& c = truth[k][i];
      *factors_out << (i ? ", " : "") << to_string(c.magnitude);
      if (c.phase_turns != 0) *factors_out << "@" << to_string(c.phase_turns);
    }
    *factors_out << ")\n";
  }
  return kExitOk;
}

// ---- oracle -----------------------------------------------------------------

std::string plural(const SolutionCount& c, const std::string& noun) {
  if (c.infinite) return "infinitely many " + noun + "s";
  return c.value.get_str() + " " + noun + (c.value == 1 ? "" : "s");
}

int cmd_oracle(const std::string& input, std::ostream& out) {
  const PartialTensor t = load(input);
  std::vector<std::string> mismatches;

  // Brute force first so an oversized input fails fast with CapExceeded.
  const SolutionSet sigma = brute_force_sigma(t);
  const SolutionCount brute_complex = sigma.infinite ? SolutionCount::unbounded()
                                                     : SolutionCount::finite(BigInt(sigma.solutions.size()));
  ComplexSolveOptions copts;
  copts.magnitudes.exponents = false;
  copts.materialization_cap = std::max<std::size_t>(sigma.solutions.size(), 1);
  const auto fast_complex = count_complex(t, copts);
  if (!(fast_complex.count == brute_complex)) {
    mismatches.push_back("complex count: fast " + to_string(fast_complex.count) + ", brute force " +
                         to_string(brute_complex));
  } else if (!sigma.infinite && fast_complex.materialized) {
    std::set<std::vector<Rational>> fast_set, brute_set;
    for (const auto& s : fast_complex.solutions.solutions) fast_set.insert(s.phase_signature());
    for (const auto& s : sigma.solutions) brute_set.insert(s.phase_signature());
    if (fast_set != brute_set) mismatches.push_back("complex solution phases differ");
  }

  std::optional<SolutionCount> real_count;
  if (t.all_real()) {
    const SolutionCount brute_real = brute_force_signs(t);
    RealSolveOptions ropts;
    ropts.magnitudes.exponents = false;
    ropts.enumeration_cap_bits = 0;
    const auto fast_real = solve_real(t, ropts);
    if (!(fast_real.count == brute_real)) {
      mismatches.push_back("real count: fast " + to_string(fast_real.count) + ", brute force " +
                           to_string(brute_real));
    }
    real_count = fast_real.count;
  }

  if (!mismatches.empty()) {
    for (const auto& m : mismatches) out << "MISMATCH: " << m << "\n";
    return kExitMismatch;
  }
  if (real_count && *real_count == fast_complex.count) {
    out << "MATCH: " << plural(fast_complex.count, "solution") << "\n";
  } else {
    if (real_count) out << "MATCH: " << plural(*real_count, "real solution") << "\n";
    out << "MATCH: " << plural(fast_complex.count, "complex solution") << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-one completion of partially observed tensors", "rankone"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Decide existence and uniqueness over R and C");
  an->add_option("input", analyze.input, "Tensor file (slice text or JSON)")->required();
  an->add_option("--field", analyze.field, "real, complex or both")
      ->check(CLI::IsMember({"real", "complex", "both"}));
  an->add_flag("--json", analyze.as_json, "Print the machine-readable report");

  SolveArgs solve;
  auto* so = app.add_subcommand("solve", "List all rank-one completions");
  so->add_option("input", solve.input, "Tensor file")->required();
  so->add_option("--field", solve.field, "real or complex")->check(CLI::IsMember({"real", "complex"}));
  so->add_flag("--exact", solve.exact, "Show magnitudes as products of observation powers");
  so->add_option("--limit", solve.limit, "Print at most N solutions")->check(CLI::NonNegativeNumber);

  FitArgs fit;
  auto* fi = app.add_subcommand("fit", "Log-domain least-squares fit of positive observations");
  fi->add_option("input", fit.input, "Tensor file")->required();
  fi->add_flag("--full", fit.full, "Also print the reconstructed full tensor");
  fi->add_flag("--json", fit.as_json, "Print the machine-readable report");

  GenerateArgs gen;
  auto* ge = app.add_subcommand("generate", "Write a (noisy) rank-one tensor");
  ge->add_option("--dims", gen.dims, "Mode sizes, e.g. 3,3,3")->required();
  ge->add_flag("--ones", gen.ones, "All-ones factors");
  ge->add_option("--factors", gen.factors, "Factor vectors, e.g. '1,2;1,1/2@1/4'");
  ge->add_option("--pattern", gen.pattern, "table1..table5, full, or 'i,j,k;i,j,k;...'");
  ge->add_option("--density", gen.density, "Observe each cell with this probability");
  ge->add_option("--count", gen.count, "Observe this many random distinct cells");
  ge->add_option("--amp", gen.amp, "Uniform noise amplitude (0 gives an exact tensor)");
  ge->add_option("--seed", gen.seed, "Random seed");
  ge->add_option("--output,-o", gen.output, "Output file (default stdout)");

  std::string oracle_input;
  auto* orc = app.add_subcommand("oracle", "Cross-check fast solvers against brute force");
  orc->add_option("input", oracle_input, "Tensor file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (an->parsed()) return cmd_analyze(analyze, out);
    if (so->parsed()) return cmd_solve(solve, out);
    if (fi->parsed()) return cmd_fit(fit, out);
    if (ge->parsed()) return cmd_generate(gen, out);
    if (orc->parsed()) return cmd_oracle(oracle_input, out);
  } catch (const Exit& e) {
    err << "rankone: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    err << "rankone: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitParse;
}

}  // namespace rankone::cli

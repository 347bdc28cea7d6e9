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

#include "rankone/io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rankone/error.hpp"

namespace rankone {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

PolarScalar parse_cell(std::string_view cell, const std::string& where) {
  try {
    if (auto at = cell.find('@'); at != std::string_view::npos) {
      Rational mag = parse_rational(cell.substr(0, at));
      Rational turns = parse_rational(cell.substr(at + 1));
      if (mag == 0) throw Error(ErrorCode::NonzeroViolation, "zero-valued cell");
      if (mag < 0) throw Error(ErrorCode::Syntax, "magnitude before '@' must be positive");
      return PolarScalar::make(std::move(mag), std::move(turns));
    }
    Rational value = parse_rational(cell);
    if (value == 0) throw Error(ErrorCode::NonzeroViolation, "zero-valued cell");
    return PolarScalar::make(std::move(value));
  } catch (const Error& err) {
    throw Error(err.code(), where + ": cell '" + std::string(cell) + "': " + err.detail());
  }
}

}  // namespace

PartialTensor parse_slice_text(std::string_view text) {
  std::vector<std::vector<std::vector<std::string_view>>> rows;
  std::vector<std::size_t> line_numbers;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::vector<std::string_view>> slices;
    for (auto slice : split(t, '|')) slices.push_back(split_ws(slice));
    rows.push_back(std::move(slices));
    line_numbers.push_back(line_no);
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyPattern, "no rows in slice text");

  const std::size_t n1 = rows.size();
  const std::size_t n3 = rows.front().size();
  const std::size_t n2 = rows.front().front().size();
  std::vector<std::pair<MultiIndex, PolarScalar>> entries;
  for (std::size_t i = 0; i < n1; ++i) {
    const std::string line_tag = "line " + std::to_string(line_numbers[i]);
    if (rows[i].size() != n3) {
      throw Error(ErrorCode::RaggedRows, line_tag + ": expected " + std::to_string(n3) +
                                             " slices, found " + std::to_string(rows[i].size()));
    }
    for (std::size_t k = 0; k < n3; ++k) {
      const auto& cells = rows[i][k];
      if (cells.size() != n2 || n2 == 0) {
        throw Error(ErrorCode::RaggedRows, line_tag + ", slice " + std::to_string(k + 1) +
                                               ": expected " + std::to_string(n2) +
                                               " cells, found " + std::to_string(cells.size()));
      }
      for (std::size_t j = 0; j < n2; ++j) {
        if (cells[j] == "*") continue;
        MultiIndex idx{i + 1, j + 1, k + 1};
        entries.emplace_back(idx, parse_cell(cells[j], line_tag + ", index " + to_string(idx)));
      }
    }
  }
  if (entries.empty()) throw Error(ErrorCode::EmptyPattern, "every cell is missing");
  return PartialTensor::exact({n1, n2, n3}, std::move(entries));
}

PartialTensor parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw Error(ErrorCode::Syntax, std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("entries")) {
    throw Error(ErrorCode::Syntax, "expected an object with \"dims\" and \"entries\"");
  }
  std::vector<std::size_t> dims;
  if (!doc["dims"].is_array()) throw Error(ErrorCode::Syntax, "\"dims\" must be an array");
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) {
      throw Error(ErrorCode::Syntax, "\"dims\" must hold positive integers");
    }
    dims.push_back(d.get<std::size_t>());
  }
  const auto& raw = doc["entries"];
  if (!raw.is_array()) throw Error(ErrorCode::Syntax, "\"entries\" must be an array");
  if (raw.empty()) throw Error(ErrorCode::EmptyPattern, "\"entries\" is empty");

  struct Entry {
    MultiIndex index;
    json mag;
    json phase;
  };
  std::vector<Entry> parsed;
  bool exact = true;
  for (std::size_t n = 0; n < raw.size(); ++n) {
    const auto& e = raw[n];
    const std::string where = "entry " + std::to_string(n + 1);
    if (!e.is_object() || !e.contains("index") || !e["index"].is_array() || !e.contains("mag")) {
      throw Error(ErrorCode::Syntax, where + ": needs \"index\" array and \"mag\"");
    }
    MultiIndex idx;
    for (const auto& c : e["index"]) {
      if (!c.is_number_integer()) throw Error(ErrorCode::Syntax, where + ": non-integer index");
      long long v = c.get<long long>();
      if (v <= 0) throw Error(ErrorCode::IndexOutOfRange, where + ": index coordinates are 1-based");
      idx.push_back(static_cast<std::size_t>(v));
    }
    json phase = e.contains("phase_turns") ? e["phase_turns"] : json("0");
    const std::array<const json*, 2> fields{&e["mag"], &phase};
    for (const json* field : fields) {
      if (field->is_number()) {
        exact = false;
      } else if (!field->is_string()) {
        throw Error(ErrorCode::Syntax, where + ": mag/phase_turns must be strings or numbers");
      }
    }
    parsed.push_back({std::move(idx), e["mag"], std::move(phase)});
  }

  auto where_of = [](const Entry& e) { return "entry " + to_string(e.index); };
  auto fail = [&](const Entry& e, const Error& err) -> Error {
    return Error(err.code(), where_of(e) + ": " + err.detail());
  };
  if (exact) {
    std::vector<std::pair<MultiIndex, PolarScalar>> entries;
    for (const auto& e : parsed) {
      try {
        Rational mag = parse_rational(e.mag.get<std::string>());
        Rational phase = parse_rational(e.phase.get<std::string>());
        if (mag == 0) throw Error(ErrorCode::NonzeroViolation, "zero magnitude");
        if (mag < 0) throw Error(ErrorCode::Syntax, "magnitude must be positive");
        entries.emplace_back(e.index, PolarScalar::make(std::move(mag), std::move(phase)));
      } catch (const Error& err) {
        throw fail(e, err);
      }
    }
    return PartialTensor::exact(std::move(dims), std::move(entries));
  }
  std::vector<std::pair<MultiIndex, FloatPolar>> entries;
  auto as_double = [](const json& v) {
    return v.is_number() ? v.get<double>() : to_double(parse_rational(v.get<std::string>()));
  };
  for (const auto& e : parsed) {
    try {
      double mag = as_double(e.mag);
      if (mag == 0.0) throw Error(ErrorCode::NonzeroViolation, "zero magnitude");
      if (mag < 0.0) throw Error(ErrorCode::Syntax, "magnitude must be positive");
      entries.emplace_back(e.index, FloatPolar::make(mag, as_double(e.phase)));
    } catch (const Error& err) {
      throw fail(e, err);
    }
  }
  return PartialTensor::floating(std::move(dims), std::move(entries));
}

std::string serialize_json(const PartialTensor& tensor) {
  json doc;
  doc["dims"] = tensor.dims();
  json entries = json::array();
  for (std::size_t e = 0; e < tensor.m(); ++e) {
    json entry;
    entry["index"] = tensor.pattern().index(e);
    if (tensor.mode() == ValueMode::Exact) {
      const auto& v = tensor.exact_values()[e];
      entry["mag"] = to_string(v.magnitude);
      entry["phase_turns"] = to_string(v.phase_turns);
    } else {
      const auto& v = tensor.float_values()[e];
      entry["mag"] = v.magnitude;
      entry["phase_turns"] = v.phase_turns;
    }
    entries.push_back(std::move(entry));
  }
  doc["entries"] = std::move(entries);
  return doc.dump() + "\n";
}

PartialTensor parse_tensor(std::string_view text) {
  auto t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_json(text);
  return parse_slice_text(text);
}

PartialTensor read_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Syntax, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tensor(buffer.str());
}

}  // namespace rankone

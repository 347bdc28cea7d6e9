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

#include "builtin_patterns.hpp"

#include <array>
#include <utility>

#include "rankone/io.hpp"

namespace rankone::cli {
namespace {

// Only the masks matter here; '1' marks an observed cell.
constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kTables{{
    {"table1",
     "1 1 1 | 1 * * | 1 * *\n"
     "1 * * | * * * | * * *\n"
     "1 * * | * * * | * * *\n"},
    {"table2",
     "1 1 * | 1 * * | * * 1\n"
     "1 * * | * * * | * * *\n"
     "* * 1 | * * * | 1 * *\n"},
    {"table3",
     "1 * * | * * 1 | * 1 *\n"
     "1 * * | * * * | * * *\n"
     "* 1 * | 1 * * | * * 1\n"},
    {"table4",
     "1 * 1 | * * * | * * *\n"
     "1 * * | * * * | * 1 *\n"
     "* 1 * | 1 * * | * * 1\n"},
    {"table5",
     "1 1 1 | 1 1 * | 1 1 *\n"
     "* * * | * * 1 | * 1 1\n"
     "1 * 1 | 1 1 * | 1 * *\n"},
}};

}  // namespace

std::optional<ObservationPattern> builtin_pattern(std::string_view name) {
  for (const auto& [key, text] : kTables) {
    if (key == name) return parse_slice_text(text).pattern();
  }
  return std::nullopt;
}

}  // namespace rankone::cli

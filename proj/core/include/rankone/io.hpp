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

#include <filesystem>
#include <string>
#include <string_view>

#include "rankone/model.hpp"

namespace rankone {

/// Slice-text layout of a 3-way tensor: one line per mode-1 index i, slices
/// (mode-3 index k) separated by '|', whitespace-separated cells within a
/// slice (mode-2 index j). A cell is '*' (missing), a rational or decimal
/// literal, or `mag@turns`. A negative literal is shorthand for `|x|@1/2`.
/// Blank lines and lines starting with '#' are skipped.
PartialTensor parse_slice_text(std::string_view text);

/// {"dims":[...], "entries":[{"index":[...], "mag":..., "phase_turns":...}]}.
/// Exact mode iff every mag and phase_turns is a string holding a rational.
PartialTensor parse_json(std::string_view text);

/// Serialized form accepted by parse_json. Exact values are written as
/// canonical rational strings, float values as shortest round-trip numbers.
std::string serialize_json(const PartialTensor& tensor);

/// Picks the parser by content: JSON when the first non-blank byte is '{'.
PartialTensor parse_tensor(std::string_view text);
PartialTensor read_tensor(const std::filesystem::path& path);

}  // namespace rankone

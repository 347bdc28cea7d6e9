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

#include "rankone/error.hpp"

namespace rankone {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::NonzeroViolation: return "NonzeroViolation";
    case ErrorCode::EmptyPattern: return "EmptyPattern";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonRealValue: return "NonRealValue";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::ConditionAViolated: return "ConditionAViolated";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::Precondition: return "Precondition";
  }
  return "Unknown";
}

}  // namespace rankone

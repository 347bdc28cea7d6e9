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

#include "rankone/complex_solver.hpp"
#include "rankone/error.hpp"
#include "rankone/exact_linalg.hpp"
#include "rankone/io.hpp"
#include "rankone/model.hpp"
#include "rankone/noisy_fit.hpp"
#include "rankone/pattern.hpp"
#include "rankone/rational.hpp"
#include "rankone/real_solver.hpp"
#include "rankone/verify.hpp"

namespace rankone {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace rankone

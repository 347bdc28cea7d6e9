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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rankone {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q" and finite decimals such as "1.1718",
/// "-0.5" or "2.5e-3". Decimals are converted exactly.
Rational parse_rational(std::string_view text);

/// Canonical form: "p" for integers, "p/q" otherwise, q > 0 and reduced.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

BigInt floor(const Rational& value);

/// Representative of value modulo one, in [0, 1).
Rational mod_one(const Rational& value);

/// Exact rational value of a finite double.
Rational exact_from_double(double value);

double to_double(const Rational& value);

/// Natural log of a positive integer of any size.
double log_of(const BigInt& value);

bool is_integer(const Rational& value);

}  // namespace rankone

// Copyright 2026 The PRUW Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace pruw {

using Rational = boost::rational<std::int64_t>;

// Accepts "3", "-2", "0.25", "5/2".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);
double to_double(const Rational& x);

// Round to nearest integer, halves away from zero.
std::int64_t round_nearest(const Rational& x);
std::int64_t ceil_of(const Rational& x);

}  // namespace pruw

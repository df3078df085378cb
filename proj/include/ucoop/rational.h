// Copyright 2026 The ucoop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UCOOP_RATIONAL_H_
#define UCOOP_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ucoop {

// Arbitrary precision rational, canonical (lowest terms, positive
// denominator) after every arithmetic operation. The two-argument mpq_class
// constructor does not reduce; use Fraction instead.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// num/den in lowest terms. den must be nonzero.
Rational Fraction(long num, long den);

// Parses "p", "-p", "p/q". Throws ParseError on malformed input or q == 0.
Rational ParseRational(std::string_view text);

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string ToString(const Rational& r);

// Exact value of a finite double.
Rational FromDouble(double d);

double ToDouble(const Rational& r);

Rational Dot(const RationalVector& a, const RationalVector& b);

}  // namespace ucoop

#endif  // UCOOP_RATIONAL_H_

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace stabkit {

// All numeric state in the library is held exactly. Norm values, defects,
// budgets and weights are rationals over arbitrary-precision integers;
// nothing is ever rounded.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// num/den with den != 0; sign is normalized onto the numerator.
Rational make_rational(Int num, Int den);

Rational rat_abs(const Rational& q);

// Largest integer <= q and smallest integer >= q, as exact integers.
Int rat_floor(const Rational& q);
Int rat_ceil(const Rational& q);

// Smallest nonnegative integer n with n*n >= q (q may be any rational).
Int ceil_sqrt(const Rational& q);

// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& q);

// Accepts "p" or "p/q" with optional leading '-'.
Rational parse_rational(const std::string& text);

} // namespace stabkit

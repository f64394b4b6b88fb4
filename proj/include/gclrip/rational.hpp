#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gclrip {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Mathematical floor (rounds toward negative infinity).
Integer floor_of(const Rational& value);

bool is_integral(const Rational& value);

/// "7", "-3" or "7/2".
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

}  // namespace gclrip

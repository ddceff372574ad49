#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace wino {

using Rational = boost::multiprecision::cpp_rational;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Parses "p", "-p" or "p/q".
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace wino

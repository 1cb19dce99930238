#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace monarel {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", "p" or "-p/q". Throws Error on malformed input or a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string format_rational(const Rational& value);

}  // namespace monarel

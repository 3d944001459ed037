#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace corrcache {

/// Exact rational arithmetic. Every load, memory size and coefficient in the
/// library is carried as one of these; nothing is rounded until output.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses `p`, `p/q` or `-p/q`. Decimal points and exponents are rejected so
/// that a memory size is never silently rounded.
Rational parse_rational(std::string_view text);

/// Renders as `p/q`, or `p` when the denominator is one.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

inline bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

}  // namespace corrcache

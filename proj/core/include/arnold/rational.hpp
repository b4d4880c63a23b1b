#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace arnold {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "7", "-61/25", "0.25" or "1e-3" into an exact value.
/// Throws DomainError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// The exact binary value of a finite double.
Rational exact_rational(double value);

/// Correctly scaled conversion; safe for numerators and denominators far
/// outside the double range.
double to_double(const Rational& value);

std::string to_string(const Rational& value);

}  // namespace arnold

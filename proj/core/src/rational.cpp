#include "arnold/rational.hpp"

#include <cmath>
#include <cstdint>

#include "arnold/error.hpp"

namespace arnold {
namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw DomainError("malformed number '" + std::string(whole) + "'");
  }
  BigInt out = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw DomainError("malformed number '" + std::string(whole) + "'");
    }
    out = out * 10 + (c - '0');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Rational parse_fixed(std::string_view text, std::string_view whole);

// Parses an unsigned decimal "123", "12.375" or "1.5e-3" as a rational.
Rational parse_decimal(std::string_view text, std::string_view whole) {
  const auto e = text.find_first_of("eE");
  if (e == std::string_view::npos) return parse_fixed(text, whole);
  auto exp_text = text.substr(e + 1);
  bool negative = false;
  if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
    negative = exp_text.front() == '-';
    exp_text.remove_prefix(1);
  }
  const BigInt exponent = parse_integer(exp_text, whole);
  if (exponent > 4000) throw DomainError("exponent out of range in '" + std::string(whole) + "'");
  BigInt scale = boost::multiprecision::pow(BigInt(10), exponent.convert_to<unsigned>());
  const Rational mantissa = parse_fixed(text.substr(0, e), whole);
  return negative ? Rational(mantissa / scale) : Rational(mantissa * scale);
}

Rational parse_fixed(std::string_view text, std::string_view whole) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_integer(text, whole));
  const auto int_part = text.substr(0, dot);
  const auto frac_part = text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw DomainError("malformed number '" + std::string(whole) + "'");
  }
  BigInt num = int_part.empty() ? BigInt(0) : parse_integer(int_part, whole);
  BigInt den = 1;
  for (char c : frac_part) {
    if (c < '0' || c > '9') {
      throw DomainError("malformed number '" + std::string(whole) + "'");
    }
    num = num * 10 + (c - '0');
    den *= 10;
  }
  return Rational(num, den);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto whole = text;
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    value = parse_decimal(text, whole);
  } else {
    const Rational num = parse_decimal(trim(text.substr(0, slash)), whole);
    const Rational den = parse_decimal(trim(text.substr(slash + 1)), whole);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(whole) + "'");
    value = num / den;
  }
  return negative ? Rational(-value) : value;
}

Rational exact_rational(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value has no rational form");
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // 53 significant bits fit in an int64 exactly.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt num = scaled;
  if (exponent >= 0) return Rational(num << exponent);
  BigInt den = 1;
  den <<= -exponent;
  return Rational(num, den);
}

double to_double(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  if (num == 0) return 0.0;
  const bool negative = num < 0;
  if (negative) num = -num;
  // Keep 64 significant bits in each before converting.
  long shift = 0;
  const long num_bits = static_cast<long>(boost::multiprecision::msb(num)) + 1;
  const long den_bits = static_cast<long>(boost::multiprecision::msb(den)) + 1;
  if (num_bits > 64) {
    num >>= (num_bits - 64);
    shift += num_bits - 64;
  }
  if (den_bits > 64) {
    den >>= (den_bits - 64);
    shift -= den_bits - 64;
  }
  const double ratio = static_cast<double>(static_cast<long double>(num.convert_to<std::uint64_t>()) /
                                           static_cast<long double>(den.convert_to<std::uint64_t>()));
  const double out = std::ldexp(ratio, static_cast<int>(shift));
  return negative ? -out : out;
}

std::string to_string(const Rational& value) {
  const BigInt& den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

}  // namespace arnold

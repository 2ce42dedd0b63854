#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tropvol {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Accepts "3", "-3", "3/4", "-3/4". Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

Integer factorial(int n);

Integer gcd_of(std::span<const std::int64_t> values);
Integer product_of(std::span<const std::int64_t> values);

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  return Rational(num, den);
}

}  // namespace tropvol

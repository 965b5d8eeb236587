#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace sparsens {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
BigInt parse_bigint(std::string_view text);

/// Parses "p/q", "p", or a plain decimal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

/// Floor of the integer square root of a non-negative value.
BigInt isqrt(const BigInt& v);

/// Index of the highest set bit of a positive value (msb(1) == 0).
std::int64_t msb(const BigInt& v);

}  // namespace sparsens

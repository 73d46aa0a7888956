#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace graphonlab {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Parses "3", "-0.125", "1/3" or "2.5/7" exactly. Exponent notation is
// rejected so that file values stay exact decimals.
Rational parse_rational(std::string_view text);

// Rounds half away from zero to `places` digits after the point.
std::string format_decimal(const Rational& value, int places = 12);

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

Rational abs(const Rational& value);

// x^e for small non-negative e.
Rational pow(const Rational& base, unsigned exponent);

// n (n-1) ... (n-k+1); zero when k > n.
BigInt falling_factorial(std::size_t n, std::size_t k);

}  // namespace graphonlab

namespace graphonlab {

// Shortest exact decimal when the value terminates ("0.45", "3"),
// otherwise "num/den". parse_rational reads either form back exactly.
std::string format_exact(const Rational& value);

}  // namespace graphonlab

#include "graphonlab/rational.hpp"

#include <cctype>

#include "graphonlab/errors.hpp"

namespace graphonlab {

namespace {

Rational parse_decimal(std::string_view text) {
  if (text.empty()) throw InputError("empty number");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  BigInt numerator = 0;
  BigInt denominator = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.') {
      if (seen_point) throw InputError("malformed number: " + std::string(text));
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InputError("malformed number: " + std::string(text));
    }
    seen_digit = true;
    numerator = numerator * 10 + (c - '0');
    if (seen_point) denominator *= 10;
  }
  if (!seen_digit) throw InputError("malformed number: " + std::string(text));
  Rational r(numerator, denominator);
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator: " + std::string(text));
  return num / den;
}

std::string format_decimal(const Rational& value, int places) {
  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const Rational scaled = magnitude * scale;
  BigInt units = boost::multiprecision::numerator(scaled) /
                 boost::multiprecision::denominator(scaled);
  const Rational remainder = scaled - Rational(units);
  if (remainder * 2 >= 1) units += 1;

  std::string digits = units.str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
  }
  std::string out;
  if (negative && units != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - static_cast<std::size_t>(places));
  }
  return out;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

BigInt falling_factorial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt result = 1;
  for (std::size_t i = 0; i < k; ++i) result *= static_cast<unsigned long>(n - i);
  return result;
}

}  // namespace graphonlab

namespace graphonlab {

std::string format_exact(const Rational& value) {
  BigInt den = boost::multiprecision::denominator(value);
  int places = 0;
  BigInt rest = den;
  while (rest % 10 == 0) { rest /= 10; ++places; }
  while (rest % 2 == 0) { rest /= 2; ++places; }
  while (rest % 5 == 0) { rest /= 5; ++places; }
  if (rest != 1) {
    return boost::multiprecision::numerator(value).str() + "/" + den.str();
  }
  // den divides 10^places, so this is exact; trim trailing zeros.
  std::string text = format_decimal(value, places);
  if (text.find('.') != std::string::npos) {
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
  }
  return text;
}

}  // namespace graphonlab

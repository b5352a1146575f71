// SPDX-License-Identifier: Apache-2.0

#include "secrisk/rational.hpp"

#include <cctype>

#include "secrisk/error.hpp"

namespace secrisk {

BigInt floor(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);  // always > 0
  BigInt quot = num / den;                                  // truncates toward zero
  if (num < 0 && quot * den != num) {
    quot -= 1;
  }
  return quot;
}

std::string to_string(const Rational& q) {
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt decimal_bigint(std::string digits);

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw DomainError("malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = decimal_bigint(std::string(s));
  return negative ? BigInt(-value) : value;
}

// cpp_int reads a leading zero as an octal prefix.
BigInt decimal_bigint(std::string digits) {
  auto nz = digits.find_first_not_of('0');
  return nz == std::string::npos ? BigInt(0) : BigInt(digits.substr(nz));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const Rational mantissa = parse_rational(text.substr(0, e));
    std::string_view exp_text = text.substr(e + 1);
    const BigInt exponent = parse_integer(exp_text, text);
    if (exponent > 4096 || exponent < -4096) {
      throw DomainError("exponent out of range in '" + std::string(text) + "'");
    }
    const int n = exponent.convert_to<int>();
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(n < 0 ? -n : n));
    return n < 0 ? Rational(mantissa / scale) : Rational(mantissa * scale);
  }

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
      throw DomainError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (!frac_part.empty() && !all_digits(frac_part)) {
      throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::string digits(int_part);
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.erase(0, 1);
    if (digits.empty() && frac_part.empty()) {
      throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    if (digits.empty()) digits = "0";
    if (!all_digits(digits)) {
      throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    digits += frac_part;
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
    Rational value(decimal_bigint(digits), scale);
    return negative ? Rational(-value) : value;
  }

  return Rational(parse_integer(text, text));
}

}  // namespace secrisk

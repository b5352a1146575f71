// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_RATIONAL_HPP
#define SECRISK_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace secrisk {

// Exact, unbounded rational. Every risk, CRRF and interval endpoint goes
// through this type so that floor() at the SL-T boundaries never sees a
// rounded value.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Largest integer not greater than q.
BigInt floor(const Rational& q);

// "17/4", "16", "-3/8". Integral values print without a denominator.
std::string to_string(const Rational& q);

// Accepts "p/q", integers and decimals with an optional exponent
// ("0.25", "1e-05"); all are converted exactly.
// Throws DomainError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace secrisk

#endif  // SECRISK_RATIONAL_HPP

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace mpgdiag {

// Weights and accumulated payoffs are exact rationals throughout: the
// winner classification is a sign test on cycle sums, and floating point
// could flip it.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "7", "-4", "3.1", "-0.25", "7/2", "-31/10".
Rational parse_rational(const std::string& text);

// Prints an integer as-is and anything else as "num/den" (lowest terms,
// positive denominator). parse_rational(format_rational(r)) == r.
std::string format_rational(const Rational& r);

bool fits_int64(const BigInt& v);
int64_t to_int64(const BigInt& v);

// Least common multiple of the denominators of `values` (>= 1).
BigInt common_denominator(const std::vector<Rational>& values);

}  // namespace mpgdiag

#include "mpgdiag/rational.hpp"

#include <boost/multiprecision/integer.hpp>
#include <limits>
#include <stdexcept>

namespace mpgdiag {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  size_t i = 0;
  bool neg = false;
  if (text[i] == '-' || text[i] == '+') {
    neg = text[i] == '-';
    ++i;
  }
  auto digits = [&](BigInt& out) {
    size_t start = i;
    out = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      out = out * 10 + (text[i] - '0');
      ++i;
    }
    if (i == start) throw std::invalid_argument("bad rational literal: " + text);
  };
  BigInt intpart;
  digits(intpart);
  Rational r(intpart);
  if (i < text.size() && text[i] == '.') {
    ++i;
    size_t start = i;
    BigInt frac;
    digits(frac);
    BigInt scale = 1;
    for (size_t k = start; k < i; ++k) scale *= 10;
    r += Rational(frac, scale);
  } else if (i < text.size() && text[i] == '/') {
    ++i;
    BigInt den;
    digits(den);
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    r = Rational(intpart, den);
  }
  if (i != text.size()) throw std::invalid_argument("bad rational literal: " + text);
  return neg ? Rational(-r) : r;
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max();
}

int64_t to_int64(const BigInt& v) {
  if (!fits_int64(v)) throw std::overflow_error("value out of int64 range: " + v.str());
  return v.convert_to<int64_t>();
}

BigInt common_denominator(const std::vector<Rational>& values) {
  BigInt l = 1;
  for (const auto& v : values) l = boost::multiprecision::lcm(l, BigInt(denominator(v)));
  return l;
}

}  // namespace mpgdiag

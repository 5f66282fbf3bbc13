#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace riffle {

// Exact numeric backend. Computations that must be reproduced bit-for-bit
// (oracle comparisons, identity checks) run on Rational; everything sized
// beyond the exact caps runs on double.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

Int factorial(int n);

// base^e by repeated squaring, e >= 0.
template <class S>
S scalar_pow(const S& base, long long e) {
  S result(1);
  S b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

// Accepts "p/q", integers, and decimal strings ("0.35" -> 7/20).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

}  // namespace riffle

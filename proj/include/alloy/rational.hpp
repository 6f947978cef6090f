#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace alloy {

// Exact arithmetic scalar used throughout the transform layer.  Everything
// that feeds the constant-combination identity stays in Rat; conversion to
// double happens only at the spectral/Monte-Carlo boundary.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline int sign_of(const Rat& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

inline double to_double(const Rat& r) { return static_cast<double>(r); }

// Renders "p/q", or just "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p", "p/q", optional leading '-'. Throws on anything else.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
}

// k^e over exact integers; e=0 gives 1 for every k, including k<=0.
inline BigInt int_pow(long long k, int e) {
  BigInt r = 1;
  BigInt base = k;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace alloy

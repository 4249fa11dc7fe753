#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace soccover {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline constexpr double kDefaultEps = 1e-9;
inline constexpr double kDefaultMargin = 1e-6;

// "p" when integral, "p/q" otherwise (q > 0, reduced).
std::string rat_to_string(const Rat& r);

// Accepts an optional sign, then digits, optionally "/digits".
// Throws std::invalid_argument on malformed input or zero denominator.
Rat rat_from_string(const std::string& s);

bool is_integer(const Rat& r);

// Exact integer square-root test for v >= 0; fills *root when requested.
bool perfect_square(const BigInt& v, BigInt* root = nullptr);

}  // namespace soccover

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dio {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

// Accepts an optional leading '-' followed by decimal digits.
std::optional<BigInt> parse_bigint(std::string_view text);

// Floor of the square root for v >= 0.
BigInt isqrt(const BigInt& v);

// Returns the root when v is a perfect square.
std::optional<BigInt> exact_sqrt(const BigInt& v);

}  // namespace dio

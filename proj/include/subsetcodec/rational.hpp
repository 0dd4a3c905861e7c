#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace subsetcodec {

// Exact rational; always kept in lowest terms with a positive denominator.
using Rational = boost::rational<std::int64_t>;

// Accepts "p/q" or "p". Throws Error(parameter) on malformed input or q == 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

// count >= r * total, evaluated exactly in 128-bit arithmetic.
bool at_least_fraction_of(std::uint64_t count, std::uint64_t total, const Rational& r);

// count == r * total, exactly.
bool equals_fraction_of(std::uint64_t count, std::uint64_t total, const Rational& r);

// ceil(r * total) for r >= 0.
std::uint64_t ceil_fraction_of(std::uint64_t total, const Rational& r);

}  // namespace subsetcodec

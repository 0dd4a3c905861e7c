#pragma once

#include <cstdint>

#include "subsetcodec/bitstring.hpp"

namespace subsetcodec {

// Bijection ℕ ↔ 2^{<ω} ordered by length, then lexicographically:
// index(s) = value of "1s" read as binary, minus one.
//   0 ↔ ε, 1 ↔ "0", 2 ↔ "1", 3 ↔ "00", ..., 12 ↔ "101"
Bitstring string_at(std::uint64_t index);
std::uint64_t index_of(const Bitstring& s);  // requires |s| <= 63

// Length of string_at(index) without materializing it.
std::uint64_t string_length_at(std::uint64_t index);

// First index whose string has the given length: 2^length - 1.
std::uint64_t first_index_of_length(std::uint64_t length);

}  // namespace subsetcodec

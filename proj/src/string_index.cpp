#include "subsetcodec/string_index.hpp"

#include <bit>

#include "subsetcodec/error.hpp"

namespace subsetcodec {

Bitstring string_at(std::uint64_t index) {
    if (index == UINT64_MAX) fail(ErrorKind::parameter, "string index out of range");
    const std::uint64_t v = index + 1;
    const auto length = static_cast<std::size_t>(std::bit_width(v) - 1);
    return Bitstring::from_uint(v, length);  // drops the leading 1
}

std::uint64_t index_of(const Bitstring& s) {
    if (s.size() > 63) fail(ErrorKind::parameter, "strings longer than 63 bits have no 64-bit index");
    return ((std::uint64_t{1} << s.size()) | s.to_uint()) - 1;
}

std::uint64_t string_length_at(std::uint64_t index) {
    if (index == UINT64_MAX) return 64;
    return static_cast<std::uint64_t>(std::bit_width(index + 1) - 1);
}

std::uint64_t first_index_of_length(std::uint64_t length) {
    if (length > 63) fail(ErrorKind::parameter, "length beyond the 64-bit index range");
    return (std::uint64_t{1} << length) - 1;
}

}  // namespace subsetcodec

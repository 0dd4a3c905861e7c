#include "subsetcodec/bitstring.hpp"

#include <algorithm>

#include "subsetcodec/error.hpp"

namespace subsetcodec {

Bitstring Bitstring::parse(std::string_view text) {
    Bitstring out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') fail(ErrorKind::parameter, "bitstring must be over {0,1}: '" + std::string(text) + "'");
        out.bits_.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

Bitstring Bitstring::from_uint(std::uint64_t value, std::size_t width) {
    Bitstring out(width);
    for (std::size_t i = 0; i < width; ++i) {
        const std::size_t shift = width - 1 - i;
        out.bits_[i] = shift < 64 ? static_cast<std::uint8_t>((value >> shift) & 1U) : 0;
    }
    return out;
}

bool Bitstring::at(std::size_t i) const {
    if (i >= bits_.size()) {
        fail(ErrorKind::window, "bit " + std::to_string(i) + " of a " + std::to_string(bits_.size()) + "-bit string");
    }
    return bits_[i] != 0;
}

Bitstring Bitstring::prefix(std::size_t length) const {
    if (length > bits_.size()) {
        fail(ErrorKind::source_exhausted,
             "need " + std::to_string(length) + " bits, message has " + std::to_string(bits_.size()));
    }
    Bitstring out;
    out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(length));
    return out;
}

bool Bitstring::is_prefix_of(const Bitstring& other) const {
    if (bits_.size() > other.bits_.size()) return false;
    return std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::uint64_t Bitstring::to_uint() const {
    if (bits_.size() > 64) fail(ErrorKind::parameter, "bitstring longer than 64 bits");
    std::uint64_t v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
}

std::string Bitstring::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace subsetcodec

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subsetcodec {

// Finite bit sequence. Character i of the text form is bit i; bit 0 is the
// leftmost ("first") bit of a message or string.
class Bitstring {
  public:
    Bitstring() = default;
    explicit Bitstring(std::size_t length, bool fill = false) : bits_(length, fill ? 1 : 0) {}

    // Parses a string over {'0','1'}; throws Error(parameter) otherwise.
    static Bitstring parse(std::string_view text);

    // The low `width` bits of `value`, most significant first.
    static Bitstring from_uint(std::uint64_t value, std::size_t width);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    bool at(std::size_t i) const;  // bounds-checked, throws Error(window)
    void set(std::size_t i, bool b) { bits_[i] = b ? 1 : 0; }
    void push_back(bool b) { bits_.push_back(b ? 1 : 0); }

    Bitstring prefix(std::size_t length) const;  // throws Error(source_exhausted) when too short
    bool is_prefix_of(const Bitstring& other) const;

    // Big-endian value of the whole string; requires size() <= 64.
    std::uint64_t to_uint() const;

    std::string to_string() const;

    friend bool operator==(const Bitstring&, const Bitstring&) = default;
    friend auto operator<=>(const Bitstring& a, const Bitstring& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.bits_ <=> b.bits_;
    }

  private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace subsetcodec

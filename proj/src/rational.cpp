#include "subsetcodec/rational.hpp"

#include <charconv>

#include "subsetcodec/error.hpp"

namespace subsetcodec {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        fail(ErrorKind::parameter, "malformed rational '" + std::string(whole) + "'");
    }
    return v;
}

using i128 = __int128;

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::int64_t num = parse_int(text.substr(0, slash), text);
    std::int64_t den = 1;
    if (slash != std::string_view::npos) den = parse_int(text.substr(slash + 1), text);
    if (den == 0) fail(ErrorKind::parameter, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

bool at_least_fraction_of(std::uint64_t count, std::uint64_t total, const Rational& r) {
    return static_cast<i128>(count) * r.denominator() >= static_cast<i128>(r.numerator()) * static_cast<i128>(total);
}

bool equals_fraction_of(std::uint64_t count, std::uint64_t total, const Rational& r) {
    return static_cast<i128>(count) * r.denominator() == static_cast<i128>(r.numerator()) * static_cast<i128>(total);
}

std::uint64_t ceil_fraction_of(std::uint64_t total, const Rational& r) {
    if (r <= 0) return 0;
    const i128 num = static_cast<i128>(r.numerator()) * static_cast<i128>(total);
    const i128 den = r.denominator();
    return static_cast<std::uint64_t>((num + den - 1) / den);
}

}  // namespace subsetcodec

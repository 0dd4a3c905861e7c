#include "subsetcodec/prefix_set.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "subsetcodec/error.hpp"

namespace subsetcodec {

namespace {

std::size_t word_count(std::uint64_t horizon) { return static_cast<std::size_t>((horizon + 63) / 64); }

void window_check(std::uint64_t n, std::uint64_t horizon) {
    if (n >= horizon) {
        fail(ErrorKind::window, std::to_string(n) + " outside [0, " + std::to_string(horizon) + ")");
    }
}

}  // namespace

FinitePrefixSet::FinitePrefixSet(std::uint64_t horizon) : horizon_(horizon), words_(word_count(horizon), 0) {}

FinitePrefixSet FinitePrefixSet::from_members(std::uint64_t horizon, std::span<const std::uint64_t> members) {
    FinitePrefixSet s(horizon);
    for (auto m : members) s.set(m);
    return s;
}

FinitePrefixSet FinitePrefixSet::from_members(std::uint64_t horizon, std::initializer_list<std::uint64_t> members) {
    return from_members(horizon, std::span<const std::uint64_t>(members.begin(), members.size()));
}

FinitePrefixSet FinitePrefixSet::from_predicate(std::uint64_t horizon, const std::function<bool(std::uint64_t)>& in) {
    FinitePrefixSet s(horizon);
    for (std::uint64_t n = 0; n < horizon; ++n) {
        if (in(n)) s.words_[n >> 6] |= std::uint64_t{1} << (n & 63);
    }
    return s;
}

FinitePrefixSet FinitePrefixSet::full(std::uint64_t horizon) {
    FinitePrefixSet s(horizon);
    std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
    if (horizon % 64 != 0) s.words_.back() = (std::uint64_t{1} << (horizon % 64)) - 1;
    return s;
}

FinitePrefixSet FinitePrefixSet::from_mask(std::uint64_t horizon, std::uint64_t mask) {
    if (horizon > 64) fail(ErrorKind::parameter, "mask windows hold at most 64 points");
    FinitePrefixSet s(horizon);
    if (horizon > 0) s.words_[0] = horizon == 64 ? mask : mask & ((std::uint64_t{1} << horizon) - 1);
    return s;
}

bool FinitePrefixSet::contains(std::uint64_t n) const {
    window_check(n, horizon_);
    return test(n);
}

void FinitePrefixSet::set(std::uint64_t n, bool member) {
    window_check(n, horizon_);
    const std::uint64_t bit = std::uint64_t{1} << (n & 63);
    if (member) {
        words_[n >> 6] |= bit;
    } else {
        words_[n >> 6] &= ~bit;
    }
}

std::uint64_t FinitePrefixSet::count_through(std::uint64_t n) const {
    window_check(n, horizon_);
    const std::size_t last = static_cast<std::size_t>(n >> 6);
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < last; ++w) c += static_cast<std::uint64_t>(std::popcount(words_[w]));
    const unsigned r = static_cast<unsigned>(n & 63);
    const std::uint64_t mask = r == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (r + 1)) - 1;
    return c + static_cast<std::uint64_t>(std::popcount(words_[last] & mask));
}

std::uint64_t FinitePrefixSet::size() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

std::optional<std::uint64_t> FinitePrefixSet::next_member(std::uint64_t from) const {
    if (from >= horizon_) return std::nullopt;
    std::size_t w = static_cast<std::size_t>(from >> 6);
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (word != 0) {
            const std::uint64_t n = (static_cast<std::uint64_t>(w) << 6) + static_cast<unsigned>(std::countr_zero(word));
            return n < horizon_ ? std::optional<std::uint64_t>(n) : std::nullopt;
        }
        if (++w >= words_.size()) return std::nullopt;
        word = words_[w];
    }
}

std::optional<std::uint64_t> FinitePrefixSet::max_member() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
        if (words_[w] != 0) return (static_cast<std::uint64_t>(w) << 6) + 63 - static_cast<unsigned>(std::countl_zero(words_[w]));
    }
    return std::nullopt;
}

std::vector<std::uint64_t> FinitePrefixSet::members() const {
    std::vector<std::uint64_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word != 0) {
            out.push_back((static_cast<std::uint64_t>(w) << 6) + static_cast<unsigned>(std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

FinitePrefixSet FinitePrefixSet::resized(std::uint64_t horizon) const {
    FinitePrefixSet out(horizon);
    const std::size_t n = std::min(out.words_.size(), words_.size());
    std::copy_n(words_.begin(), n, out.words_.begin());
    if (horizon % 64 != 0 && !out.words_.empty()) out.words_.back() &= (std::uint64_t{1} << (horizon % 64)) - 1;
    return out;
}

bool FinitePrefixSet::is_subset_of(const FinitePrefixSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        const std::uint64_t theirs = w < other.words_.size() ? other.words_[w] : 0;
        if ((words_[w] & ~theirs) != 0) return false;
    }
    return true;
}

bool FinitePrefixSet::is_disjoint_from(const FinitePrefixSet& other) const {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < n; ++w) {
        if ((words_[w] & other.words_[w]) != 0) return false;
    }
    return true;
}

}  // namespace subsetcodec

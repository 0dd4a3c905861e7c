#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace subsetcodec {

// Membership bitvector of a set A ⊆ ℕ restricted to the window [0, horizon).
// Bit n is stored at word n / 64, position n % 64.
class FinitePrefixSet {
  public:
    FinitePrefixSet() = default;
    explicit FinitePrefixSet(std::uint64_t horizon);

    static FinitePrefixSet from_members(std::uint64_t horizon, std::span<const std::uint64_t> members);
    static FinitePrefixSet from_members(std::uint64_t horizon, std::initializer_list<std::uint64_t> members);
    static FinitePrefixSet from_predicate(std::uint64_t horizon, const std::function<bool(std::uint64_t)>& in);
    static FinitePrefixSet full(std::uint64_t horizon);
    // Low `horizon` bits of `mask`; horizon <= 64.
    static FinitePrefixSet from_mask(std::uint64_t horizon, std::uint64_t mask);

    std::uint64_t horizon() const noexcept { return horizon_; }

    bool contains(std::uint64_t n) const;  // throws Error(window) when n >= horizon
    bool test(std::uint64_t n) const noexcept {
        return n < horizon_ && ((words_[n >> 6] >> (n & 63)) & 1U) != 0;
    }
    void set(std::uint64_t n, bool member = true);

    // |A ∩ [0, n]|; throws Error(window) when n >= horizon.
    std::uint64_t count_through(std::uint64_t n) const;
    std::uint64_t size() const;
    bool empty() const { return size() == 0; }

    // Least member >= from, if any.
    std::optional<std::uint64_t> next_member(std::uint64_t from) const;
    std::optional<std::uint64_t> max_member() const;
    std::vector<std::uint64_t> members() const;

    // Same members, window cut or padded to `horizon`.
    FinitePrefixSet resized(std::uint64_t horizon) const;

    bool is_subset_of(const FinitePrefixSet& other) const;
    bool is_disjoint_from(const FinitePrefixSet& other) const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const FinitePrefixSet&, const FinitePrefixSet&) = default;

  private:
    std::uint64_t horizon_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace subsetcodec

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace subsetcodec {

// Finite partial map ℕ → {0,1}. Lookups outside the domain return nullopt,
// which is distinct from the value 0.
class PartialBitFunction {
  public:
    std::optional<bool> operator()(std::uint64_t x) const {
        auto it = entries_.find(x);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    bool defined_at(std::uint64_t x) const { return entries_.contains(x); }
    void define(std::uint64_t x, bool value) { entries_[x] = value; }
    std::size_t domain_size() const noexcept { return entries_.size(); }

    std::vector<std::uint64_t> domain() const {
        std::vector<std::uint64_t> out;
        out.reserve(entries_.size());
        for (const auto& [x, v] : entries_) out.push_back(x);
        return out;
    }

    const std::map<std::uint64_t, bool>& entries() const noexcept { return entries_; }

    // True iff `other` agrees with this function wherever this one is defined
    // and other is also defined.
    bool compatible_with(const PartialBitFunction& other) const {
        for (const auto& [x, v] : entries_) {
            auto w = other(x);
            if (w && *w != v) return false;
        }
        return true;
    }

    friend bool operator==(const PartialBitFunction&, const PartialBitFunction&) = default;

  private:
    std::map<std::uint64_t, bool> entries_;
};

}  // namespace subsetcodec

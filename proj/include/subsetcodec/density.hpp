#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subsetcodec/prefix_set.hpp"
#include "subsetcodec/rational.hpp"

namespace subsetcodec {

// d_A(n) = |A ∩ [0, n]| / (n + 1) for every n in the window. Only the integer
// counts are stored; values are formed on demand so they stay exact.
class DensityProfile {
  public:
    DensityProfile() = default;
    explicit DensityProfile(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {}

    std::uint64_t horizon() const noexcept { return counts_.size(); }
    std::uint64_t count(std::uint64_t n) const { return counts_.at(n); }
    Rational value(std::uint64_t n) const;
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

    // value(n+1) == (value(n)·(n+1) + A(n+1)) / (n+2) at every n, and every
    // value lies in [0, 1].
    bool satisfies_recurrence(const FinitePrefixSet& a) const;

  private:
    std::vector<std::uint64_t> counts_;
};

// A lower-bound function f: ℕ → [0, 1] with exact comparisons. Besides
// constants and sampled tables this supports f(n) = 1/√(n+1), whose values
// are irrational but whose comparisons against rationals are decidable in
// integer arithmetic.
class LowerBound {
  public:
    static LowerBound constant(Rational value);
    static LowerBound sampled(std::vector<Rational> values);
    static LowerBound inverse_sqrt();
    static LowerBound from_function(std::function<Rational(std::uint64_t)> f, std::string name);

    // "inv_sqrt" or "const:p/q".
    static LowerBound parse(const std::string& descriptor);
    std::string describe() const;

    // count / (n + 1) >= f(n)
    bool satisfied_by(std::uint64_t count, std::uint64_t n) const;
    // f(n) <= r
    bool at_most(std::uint64_t n, const Rational& r) const;

  private:
    enum class Kind { constant, sampled, inverse_sqrt, function };

    Rational rational_at(std::uint64_t n) const;

    Kind kind_ = Kind::constant;
    Rational constant_{0};
    std::vector<Rational> table_;
    std::function<Rational(std::uint64_t)> fn_;
    std::string name_;
};

// Throws Error(window) when n >= A.horizon().
Rational density_at(const FinitePrefixSet& a, std::uint64_t n);

// |A ∩ [0, n]| >= δ·(n + 1)
bool is_dense_at(const FinitePrefixSet& a, const Rational& delta, std::uint64_t n);

// δ-dense at every member of D; requires D.horizon() <= A.horizon().
bool is_delta_dense_along(const FinitePrefixSet& a, const Rational& delta, const FinitePrefixSet& d);

// δ-dense at every point of the window.
bool is_delta_dense(const FinitePrefixSet& a, const Rational& delta);

DensityProfile density_profile(const FinitePrefixSet& a);

bool is_f_dense(const FinitePrefixSet& a, const LowerBound& f);
std::optional<std::uint64_t> first_f_violation(const FinitePrefixSet& a, const LowerBound& f);

}  // namespace subsetcodec

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subsetcodec/density.hpp"
#include "subsetcodec/rational.hpp"

namespace subsetcodec {

enum class Scheme { interval, slowdecay, parity };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& name);

// Strictly increasing n_0 < n_1 < ... carrying the constraints of the scheme
// that produced it. Interval i is [values[i], values[i+1]).
//
//   interval:  n_{i+1} > i·n_i
//   slowdecay: n_0 = 0; for i >= 1: f(m) <= 1/(5·2^{2i+1}) for m >= n_i,
//              2^{2i+1} divides n_{i+1} - n_i, and n_i > 2^{2i-1}
//   parity:    n_0 = 0, every n_i even, δ_i·n_{i+1} > n_i where π(i) = (j_i, δ_i)
struct ThresholdSequence {
    Scheme scheme = Scheme::interval;
    std::vector<std::uint64_t> values;
    // slowdecay only: descriptor of f, so constraint (1) can be re-checked on load
    std::optional<std::string> bound;

    std::size_t intervals() const { return values.empty() ? 0 : values.size() - 1; }
    // Index i with values[i] <= m < values[i+1], if m lies in a known interval.
    std::optional<std::size_t> interval_of(std::uint64_t m) const;

    friend bool operator==(const ThresholdSequence&, const ThresholdSequence&) = default;
};

// Dyadic pair (j, δ = 1/2^{t+1}) enumerated by the Cantor pairing of (j, t):
// index(j, t) = (j+t)(j+t+1)/2 + t.
struct DyadicPair {
    std::uint64_t message_index = 0;
    std::uint32_t exponent = 0;  // t

    Rational density() const;
    friend bool operator==(const DyadicPair&, const DyadicPair&) = default;
};

class PairEnumeration {
  public:
    static DyadicPair at(std::uint64_t i);
    static std::uint64_t index_of(std::uint64_t j, std::uint32_t t);
};

// Interval scheme default generator: n_0 = 1, n_{i+1} = max(i,1)·n_i + 1.
// Extends `seq` until it has `count` values or its last value reaches `until`.
void extend_interval(ThresholdSequence& seq, std::size_t count, std::uint64_t until = UINT64_MAX);
ThresholdSequence interval_thresholds_covering(std::uint64_t horizon);

// Parity scheme: n_0 = 0, n_{i+1} = least even integer exceeding n_i and n_i/δ_i.
void extend_parity(ThresholdSequence& seq, std::size_t count, std::uint64_t until = UINT64_MAX);
ThresholdSequence parity_thresholds_covering(std::uint64_t horizon);

// Slow-decay scheme: each n_i (i >= 1) is the least value satisfying the
// constraints. Throws Error(threshold_search_exhausted) if a value would exceed
// search_limit.
inline constexpr std::uint64_t kDefaultSearchLimit = std::uint64_t{1} << 48;
void extend_slowdecay(ThresholdSequence& seq, const LowerBound& f, std::size_t count,
                      std::uint64_t search_limit = kDefaultSearchLimit);

// Throws Error(invalid_threshold) describing the first violated constraint.
void validate(const ThresholdSequence& seq);
void validate(const ThresholdSequence& seq, const LowerBound& f);

std::string thresholds_to_json(const ThresholdSequence& seq);
ThresholdSequence thresholds_from_json(const std::string& text);  // validates

}  // namespace subsetcodec

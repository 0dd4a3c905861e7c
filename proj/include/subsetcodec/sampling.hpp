#pragma once

#include <cstdint>

#include "subsetcodec/prefix_set.hpp"
#include "subsetcodec/rational.hpp"

namespace subsetcodec {

// Keeps members at positions offset, offset+k, offset+2k, ... of the
// enumeration of A (k >= 1).
FinitePrefixSet stride_sample(const FinitePrefixSet& a, std::uint64_t k, std::uint64_t offset = 0);

// Keeps each member independently with probability p, driven by a
// mt19937_64 seeded with `seed`. Deterministic for a given (A, p, seed).
FinitePrefixSet bernoulli_sample(const FinitePrefixSet& a, const Rational& p, std::uint64_t seed);

// Bernoulli thinning re-drawn (seed, seed+1, ...) until {0} ∪ sample is
// floor-dense over the whole window; throws Error(precondition) after
// `attempts` failures.
FinitePrefixSet bernoulli_sample_with_floor(const FinitePrefixSet& a, const Rational& p, const Rational& floor,
                                            std::uint64_t seed, unsigned attempts = 64);

}  // namespace subsetcodec

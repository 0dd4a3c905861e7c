#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "subsetcodec/bitstring.hpp"
#include "subsetcodec/density.hpp"
#include "subsetcodec/partial_function.hpp"
#include "subsetcodec/prefix_set.hpp"
#include "subsetcodec/rational.hpp"
#include "subsetcodec/thresholds.hpp"

namespace subsetcodec {

// Bit-order convention used by every codec: "m ends with string s" means the
// last character of s is the least significant bit of m, and residues are read
// from strings big-endian.

// ---------------------------------------------------------------------------
// Initial-segment coding: A = { index(X↾ℓ) : ℓ >= 0 }.

// Requires |X| >= ceil(log2(horizon + 1)); throws Error(source_exhausted).
FinitePrefixSet dm_encode(const Bitstring& message, std::uint64_t horizon);

// Bit i of the message named by the sample. Every member must name a prefix
// of one common string (Error(invalid_sample) otherwise); some member must
// name a string longer than i (Error(insufficient_sample) otherwise).
bool dm_decode(const FinitePrefixSet& sample, std::size_t i);

// ---------------------------------------------------------------------------
// Interval redundancy: A = ⋃_{i ∈ Ã} [n_i, n_{i+1}).

FinitePrefixSet interval_encode(const std::function<bool(std::uint64_t)>& indices,
                                const ThresholdSequence& thresholds, std::uint64_t horizon);

// { i : sample ∩ [n_i, n_{i+1}) ≠ ∅ }, ascending.
std::vector<std::uint64_t> interval_decode(const FinitePrefixSet& sample, const ThresholdSequence& thresholds);

// ---------------------------------------------------------------------------
// Slow-decay coding. [0, n_1) ⊆ A, and for m in [n_i, n_{i+1}) with i >= 1,
// m ∈ A iff m ends with σ_i = X↾i ⌢ 1 ⌢ 0^i.

struct SlowDecayCode {
    FinitePrefixSet set;
    ThresholdSequence thresholds;
};

// `count` intervals [n_0, n_1), ..., [n_{count-1}, n_count); the window must lie
// inside them (n_count >= horizon, else Error(horizon)). Needs |X| >= count - 1.
SlowDecayCode slowdecay_encode(const Bitstring& message, const LowerBound& f, std::size_t count,
                               std::uint64_t horizon);

// σ_i as a number: value of X↾i ⌢ 1 ⌢ 0^i.
std::uint64_t slowdecay_suffix(const Bitstring& message, std::size_t i);

// Bit i of X from the least member m >= n1 with more than i trailing zeros.
bool slowdecay_decode(const FinitePrefixSet& sample, std::uint64_t n1, std::size_t i);

// ---------------------------------------------------------------------------
// Parity-interval coding: in [n_i, n_{i+1}), with π(i) = (j, δ), m ∈ A iff
// parity(m) == X(j).

struct ParityCode {
    FinitePrefixSet set;
    ThresholdSequence thresholds;
};

// Uses just enough intervals to cover the window.
ParityCode parity_encode(const Bitstring& message, std::uint64_t horizon);
// Uses exactly `count` intervals; throws Error(horizon) if they do not cover the window.
ParityCode parity_encode(const Bitstring& message, std::size_t count, std::uint64_t horizon);

// Message indices j carried by at least one interval that starts inside the window.
std::vector<std::uint64_t> parity_covered_indices(const ThresholdSequence& thresholds, std::uint64_t horizon);

bool parity_decode(const FinitePrefixSet& sample, std::uint64_t j, const ThresholdSequence& thresholds);

// ---------------------------------------------------------------------------
// Residue coding: A = { n >= N : n mod 2^m = value of ρ↾m }, where
// 2^{-m-1} < δ <= 2^{-m}.

std::uint32_t residue_bits(const Rational& delta);  // m; Error(parameter) unless 0 < δ <= 1

// ρ extended by "1 0 0 ..." to length >= m when shorter.
Bitstring residue_pad(const Bitstring& rho, std::uint32_t m);

FinitePrefixSet residue_encode(const Bitstring& rho, std::uint64_t floor_n, const Rational& delta,
                               std::uint64_t horizon);

struct ResidueDecoding {
    Bitstring prefix;      // first m bits of ρ
    std::uint64_t witness;  // the element n >= N it was read from
};

ResidueDecoding residue_decode(std::uint64_t n, std::uint64_t floor_n, std::uint32_t m);

// ---------------------------------------------------------------------------
// Even/odd split: B = {2n : n ∈ A} ∪ {2n+1 : n ∉ A}.

FinitePrefixSet evenodd_split(const FinitePrefixSet& a);

struct EvenOddParts {
    FinitePrefixSet even;  // {n : 2n ∈ C}
    FinitePrefixSet odd;   // {n : 2n+1 ∈ C}
    PartialBitFunction f;  // 1 on even, 0 on odd
};

// Throws Error(inconsistent_sample) if both 2n and 2n+1 are in C.
EvenOddParts evenodd_extract(const FinitePrefixSet& c);

}  // namespace subsetcodec

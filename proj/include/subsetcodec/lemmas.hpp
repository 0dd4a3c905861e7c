#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subsetcodec/exec.hpp"
#include "subsetcodec/prefix_set.hpp"
#include "subsetcodec/rational.hpp"

namespace subsetcodec {

// Members share one window [0, universe).
using SubsetFamily = std::vector<FinitePrefixSet>;

struct PairWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    Rational ratio{0};  // |A_i ∩ A_j| / n
};

// Pair i < j maximizing |A_i ∩ A_j| / n, ties to the lexicographically least
// pair. Throws Error(parameter) for fewer than two members or mixed windows.
PairWitness variance_pair_witness(const SubsetFamily& family);

// ceil(2/δ); Error(parameter) unless 0 < δ <= 1.
std::uint64_t min_family_size(const Rational& delta);

struct DisjointVerdict {
    bool disjoint_and_dense = false;  // pairwise disjoint, each δ/2-dense at n
    bool within_bound = true;         // |F| <= 2/δ whenever the first holds
};

DisjointVerdict disjoint_dense_bound_check(const SubsetFamily& family, const Rational& delta, std::uint64_t n);

// Largest number of pairwise-disjoint subsets of [0, n], each δ/2-dense at n,
// found by exhaustive search (n <= 20).
std::uint64_t max_disjoint_dense_family(std::uint64_t n, const Rational& delta);

// Least i with parts[i] δ/k-dense at n. Throws Error(invalid_partition) if the
// parts do not partition B, Error(precondition) if B is not δ-dense at n.
std::size_t partition_density_witness(const FinitePrefixSet& b, const SubsetFamily& parts, const Rational& delta,
                                      std::uint64_t n);

// ---------------------------------------------------------------------------
// Bitmask kernels (universe <= 64). Each has an OpenMP path and a serial
// reference; the two agree exactly.

namespace detail {
// Least i with part_counts[i] >= (δ/k)·(n+1), k = part_counts.size().
std::optional<std::size_t> first_dense_part(std::span<const std::uint64_t> part_counts, const Rational& delta,
                                            std::uint64_t n);
}  // namespace detail

struct VarianceSweep {
    std::uint64_t families = 0;
    std::uint64_t half_square_checked = 0;     // families with k >= ceil(2/δ)
    std::uint64_t half_square_violations = 0;  // best ratio < δ²/2
    std::uint64_t gap_violations = 0;          // best ratio < δ² - δ/k
    std::uint64_t variance_violations = 0;     // best·n·k² < S² - S·n, or Var < 0
    Rational min_ratio{1};                     // least best-pair ratio seen

    bool clean() const { return half_square_violations == 0 && gap_violations == 0 && variance_violations == 0; }
    friend bool operator==(const VarianceSweep&, const VarianceSweep&) = default;
};

inline constexpr std::uint64_t kDefaultFamilyBudget = std::uint64_t{1} << 30;

// Number of families exhaustive_variance would visit (saturating).
std::uint64_t variance_family_count(std::uint64_t n, std::size_t k, const Rational& delta);

// All multisets of k subsets of [0, n) with sizes >= ceil(δn). Throws
// Error(budget) when more than `budget` families would be visited.
VarianceSweep exhaustive_variance(std::uint64_t n, std::size_t k, const Rational& delta, Exec exec = Exec::parallel,
                                  std::uint64_t budget = kDefaultFamilyBudget);

// `trials` random families over [0, n) (n <= 64): k uniform in [2, 8],
// δ ∈ {1/2, 1/4}, member sizes uniform in [ceil(δn), n].
VarianceSweep random_variance(std::uint64_t n, std::uint64_t trials, std::uint64_t seed, Exec exec = Exec::parallel);

struct PartitionSweep {
    std::uint64_t instances = 0;
    std::uint64_t failures = 0;
    friend bool operator==(const PartitionSweep&, const PartitionSweep&) = default;
};

// Every B ⊆ [0, n] with B ≠ ∅ and every labelled partition of B into k parts,
// at the tightest δ = |B|/(n+1).
PartitionSweep exhaustive_partition(std::uint64_t n, std::size_t k, Exec exec = Exec::parallel);

}  // namespace subsetcodec

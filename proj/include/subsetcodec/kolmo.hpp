#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "subsetcodec/bitstring.hpp"
#include "subsetcodec/exec.hpp"
#include "subsetcodec/prefix_set.hpp"
#include "subsetcodec/rational.hpp"

namespace subsetcodec {

// Toy oracle machine. A program is a bitstring read as consecutive 3-bit
// opcodes, most significant bit first:
//
//   000 EMIT0         append 0 to the output
//   001 EMIT1         append 1 to the output
//   010 HALT          stop; the output so far is the result
//   011 QBRANCH a b   query oracle at the pointer; the next two 3-bit fields are
//                     offsets a, b. Continue at slot pc+3+a if the bit is 1,
//                     pc+3+b otherwise (slots counted in opcodes).
//   100 INC           pointer += 1
//   101 JUMPBACK k    the next 3-bit field is k; continue at slot pc - k
//   110 NOP
//   111 RESERVED      malformed: diverges
//
// The pointer starts at 0. Every executed instruction costs one step; every
// QBRANCH costs one query. Running off the end of the code (including a
// trailing partial opcode), a jump before slot 0, a RESERVED opcode, more than
// max_steps steps, or a query above max_query all count as divergence. The
// empty program halts in zero steps with empty output.
enum class Opcode : std::uint8_t {
    emit0 = 0,
    emit1 = 1,
    halt = 2,
    query_branch = 3,
    inc_pointer = 4,
    jump_back = 5,
    nop = 6,
    reserved = 7,
};

struct RunResult {
    std::optional<Bitstring> output;  // nullopt = divergence
    std::uint64_t steps = 0;
    std::uint64_t queries = 0;
    std::vector<std::uint64_t> queried;  // positions in query order

    bool halted() const { return output.has_value(); }
};

RunResult run_program(const Bitstring& program, const FinitePrefixSet& oracle, std::uint64_t max_steps,
                      std::uint64_t max_query);

// EMIT per bit, then HALT: length 3|σ|+3, runs in |σ|+1 steps, no queries.
Bitstring literal_program(const Bitstring& sigma);

// Program number `code` of the given bit length (big-endian).
Bitstring program_from_code(std::uint64_t code, std::uint32_t length);

// nullopt stands for ∞.
using Complexity = std::optional<std::uint64_t>;

inline constexpr std::uint64_t kMaxOracleMax = 16;

// C^s(σ): shortest program of length <= max(s) that outputs σ within max(s)
// steps and queries at most position max(s). ∞ for s = ∅ or when no program
// qualifies. Throws Error(budget) when max(s) > 16.
Complexity c_finite(const FinitePrefixSet& s, const Bitstring& sigma, Exec exec = Exec::parallel);

// For every output of some qualifying program of length < length_bound, the
// least such length. length_bound is clipped to max(s) + 1.
std::map<Bitstring, std::uint64_t> complexity_table(const FinitePrefixSet& s, std::uint64_t length_bound,
                                                    Exec exec = Exec::parallel);

// {τ : C^s(τ) < k}, ascending.
std::vector<Bitstring> low_complexity_strings(const FinitePrefixSet& s, std::uint32_t k,
                                              Exec exec = Exec::parallel);

// max over the family of c_finite; ∞ absorbs. Throws Error(parameter) on an
// empty family.
Complexity c_family(const Bitstring& sigma, std::span<const FinitePrefixSet> family);

struct CountingSweep {
    std::uint64_t oracles = 0;
    std::uint64_t checks = 0;      // (s, k) pairs
    std::uint64_t violations = 0;  // |{τ : C^s(τ) < k}| >= 2^k
    std::uint64_t max_count[8] = {};  // largest observed count per k (k < 8)
    friend bool operator==(const CountingSweep&, const CountingSweep&) = default;
};

// Every nonempty s with max(s) <= max_oracle_max and every k <= max_k (<= 7).
CountingSweep counting_bound_sweep(std::uint64_t max_oracle_max, std::uint32_t max_k, Exec exec = Exec::parallel);

// ---------------------------------------------------------------------------
// k-safety over a finite universe [0, universe).

struct KSafeInstance {
    std::vector<Bitstring> family;          // F = {τ_1, ..., τ_n}, no duplicates
    std::vector<FinitePrefixSet> pieces;    // X_1, ..., X_p over [0, universe)
    std::uint64_t universe = 0;
    std::uint64_t m = 0;
    std::uint32_t k = 0;
};

struct KSafeVerdict {
    bool safe = true;
    std::vector<std::size_t> pieces;        // offending piece indices (one for k_safe_check)
    std::optional<FinitePrefixSet> oracle;  // offending s
    std::uint64_t low_complexity = 0;       // |{τ : C^s(τ) < k} ∪ F'| at the violation
    std::uint64_t oracles_checked = 0;
};

inline constexpr std::uint64_t kDefaultSubsetBudget = std::uint64_t{1} << 22;

// Pieces must partition [0, universe). Checks every nonempty s ⊆ X_i with
// |s| >= m. Throws Error(budget) if more than `budget` oracles would be examined.
KSafeVerdict k_safe_check(const KSafeInstance& inst, std::uint64_t budget = kDefaultSubsetBudget);

// One piece per string of F, each δ-dense at every window point; for every
// nonempty index set I and every nonempty s ⊆ ⋂_{i∈I} X_i with |s| >= m,
// |{τ : C^s(τ) < k} ∪ {τ_i : i ∈ I}| <= 2^k.
KSafeVerdict k_safe_density_check(const KSafeInstance& inst, const Rational& delta,
                                  std::uint64_t budget = kDefaultSubsetBudget);

}  // namespace subsetcodec

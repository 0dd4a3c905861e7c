#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subsetcodec/bitstring.hpp"
#include "subsetcodec/partial_function.hpp"
#include "subsetcodec/prefix_set.hpp"
#include "subsetcodec/rational.hpp"

namespace subsetcodec {

// Machines Φ_i given as lookup tables: Φ_i(x) converges with `output` at
// `stage`; Φ_{i,t}(x) converges iff stage <= t. Absent entries diverge.
class SteppedMachineTable {
  public:
    struct Entry {
        std::uint64_t machine = 0;
        std::uint64_t input = 0;
        bool output = false;
        std::uint64_t stage = 0;
    };
    struct Convergence {
        bool output;
        std::uint64_t stage;
    };

    explicit SteppedMachineTable(std::uint64_t budget = 0) : budget_(budget) {}

    // Throws Error(parameter) if stage > budget or (machine, input) repeats.
    void add(const Entry& e);

    std::uint64_t budget() const noexcept { return budget_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::vector<Entry> entries() const;

    // Φ_i(x)
    std::optional<Convergence> converges(std::uint64_t machine, std::uint64_t input) const;
    // Φ_{i,t}(x)
    std::optional<bool> run(std::uint64_t machine, std::uint64_t input, std::uint64_t stages) const;

    // {"budget": B, "entries": [{"machine":i,"input":x,"output":b,"stage":s}, ...]}
    static SteppedMachineTable from_json(const std::string& text);
    std::string to_json() const;

  private:
    std::uint64_t budget_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Convergence> entries_;
};

// π(x) = 2-adic valuation of x + 1. The fiber of v meets every window of
// length 2^{v+1} exactly once.
std::uint32_t fiber_of(std::uint64_t x);

// Least x > after with fiber_of(x) == v.
std::uint64_t next_in_fiber(std::uint64_t after, std::uint32_t v);

struct PaConstruction {
    PartialBitFunction f;
    std::vector<std::uint64_t> xs;                          // x_0 .. x_{k-1}
    std::vector<std::optional<std::uint64_t>> stages;       // s_i when Φ_i(x_i)↓
    FinitePrefixSet a;                                      // string indices in [0, horizon)
    std::uint64_t max_blocking_per_length = 0;              // diagonal bookkeeping check, always <= 1
};

// Membership of σ in A: whenever Φ_i(x_i)↓ but Φ_{i,|σ|}(x_i)↑ and x_i < |σ|,
// σ(x_i) = f(x_i). Constraints with x_i >= |σ| hold vacuously.
bool pa_member(const PaConstruction& pc, const SteppedMachineTable& table, const Bitstring& sigma);

// Diagonalizes against machines 0..k-1 and builds A over string indices
// [0, horizon). Throws Error(horizon) if some x_i falls outside the window.
PaConstruction pa_construct(const SteppedMachineTable& table, std::size_t k, std::uint64_t horizon);

// g(x) from the first σ in B (index order) with |σ| > x.
// Throws Error(insufficient_sample) when no such σ exists.
bool pa_decode(const FinitePrefixSet& b, const SteppedMachineTable& table, std::uint64_t x);

// Every x that B can decode: x < max |σ| over σ ∈ B.
std::uint64_t pa_decodable_limit(const FinitePrefixSet& b);

struct PaReport {
    bool density_ok = true;
    std::optional<std::uint64_t> first_density_violation;
    Rational min_density{1};                 // over n >= 3
    std::size_t samples = 0;
    std::size_t completion_failures = 0;     // g disagrees with f on dom(f)
    std::size_t diagonal_failures = 0;       // g(x_i) != 1 - Φ_i(x_i) for converging i
    std::size_t checked_points = 0;          // (sample, x) pairs compared against f
    std::uint64_t max_blocking_per_length = 0;

    bool ok() const {
        return density_ok && completion_failures == 0 && diagonal_failures == 0 && max_blocking_per_length <= 1;
    }
};

// Density ≥ 1/4 at every window point n >= 3, then `samples` seeded subsets of
// A (stride and Bernoulli thinnings), each decoded against f.
PaReport pa_verify(const PaConstruction& pc, const SteppedMachineTable& table, std::size_t samples,
                   std::uint64_t seed);

// The eight-machine table used by the acceptance suite and the CLI default.
SteppedMachineTable fixed_pa_table();

}  // namespace subsetcodec
